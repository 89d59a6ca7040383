//! Small exact-arithmetic helpers: Catalan numbers, binomials, factorials.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{BigUint, One, Zero};

/// The Catalan numbers `C_0 ..= C_n`, computed by the convolution recurrence
/// `C_{k+1} = sum_i C_i C_{k-i}`.
pub fn catalan_numbers(n: usize) -> Vec<BigUint> {
    let mut cat = Vec::with_capacity(n + 1);
    cat.push(BigUint::one());
    for k in 0..n {
        let mut next = BigUint::zero();
        for i in 0..=k {
            next += &cat[i] * &cat[k - i];
        }
        cat.push(next);
    }
    cat
}

/// The `n`-th Catalan number.
pub fn catalan(n: usize) -> BigUint {
    catalan_numbers(n).pop().unwrap()
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigUint {
    let mut res = BigUint::one();
    for i in 2..=n {
        res *= BigUint::from(i);
    }
    res
}

/// Binomial coefficient with the combinatorial convention: zero whenever
/// `n < 0`, `k < 0`, or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let mut res = BigUint::one();
    for i in 0..k {
        res = res * BigUint::from(n as u64 - i) / BigUint::from(i + 1);
    }
    res
}

/// Convert a nonnegative exact rational to a big integer, panicking if it is
/// not actually an integer. Used for closed forms that always clear their
/// denominator; a failure here means an index error upstream.
pub fn expect_integer(r: &BigRational) -> BigUint {
    assert!(r.is_integer(), "expected an integer, got {r}");
    let i = r.to_integer();
    assert!(i >= BigInt::zero(), "expected a nonnegative integer, got {i}");
    i.to_biguint().unwrap()
}
