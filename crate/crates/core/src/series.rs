//! Truncated formal power series over exact rationals, in one, two, and
//! three variables, together with the named generating functions and the
//! kernel-method machinery built on them.
//!
//! A univariate series carries its coefficients `c_0 ..= c_N` densely;
//! arithmetic results are exact through the minimum of the operand orders.
//! Equality always means agreement through the common order. The divided
//! difference `(C(x) - C(y)) / (x - y)` is only ever evaluated through its
//! explicit double-sum expansion, never as a division.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{BigUint, One, Signed, Zero};

use crate::classes::{closed_form_231_312_321, DescentTable, RefinedTable};
use crate::error::Error;
use crate::numbers::catalan_numbers;
use crate::Result;

fn rat_u(u: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(u.clone()))
}

fn rat_i(i: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(i))
}

/// A univariate truncated power series with exact rational coefficients,
/// known exactly through `x^order`.
#[derive(Clone, Debug)]
pub struct TruncSeries {
    coeffs: Vec<BigRational>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![BigRational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The monomial `x`.
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = BigRational::one();
        }
        s
    }

    /// A polynomial from integer coefficients `c_0, c_1, ...`, truncated or
    /// zero-padded to the given order.
    pub fn from_int_coeffs(cs: &[i64], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (i, &c) in cs.iter().enumerate().take(order + 1) {
            s.coeffs[i] = rat_i(c);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Lowest index with a nonzero coefficient, or `order + 1` if none.
    pub fn valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Agreement through the common order.
    pub fn agrees_with(&self, other: &TruncSeries) -> bool {
        let n = self.order().min(other.order());
        self.coeffs[..=n] == other.coeffs[..=n]
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a series by truncation");
        Self { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &TruncSeries) -> Self {
        let n = self.order().min(other.order());
        Self {
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, other: &TruncSeries) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &TruncSeries) -> Self {
        let n = self.order().min(other.order());
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self { coeffs }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by `x^k`, keeping the order (top coefficients fall off).
    pub fn mul_x_pow(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for i in 0..=n.saturating_sub(k) {
            coeffs[i + k] = self.coeffs[i].clone();
        }
        Self { coeffs }
    }

    /// Divide by `x^k`; the valuation must be at least `k`, and the order
    /// drops by `k`.
    pub fn div_x_pow(&self, k: usize) -> Result<Self> {
        if self.valuation() < k {
            return Err(Error::ValuationTooLow { required: k, found: self.valuation() });
        }
        if self.order() < k {
            return Err(Error::ValuationTooLow { required: k, found: self.order() });
        }
        Ok(Self { coeffs: self.coeffs[k..].to_vec() })
    }

    /// Division by a series with invertible constant term.
    pub fn div(&self, denom: &TruncSeries) -> Result<Self> {
        if denom.coeffs[0].is_zero() {
            return Err(Error::DivisionByNonUnit);
        }
        let n = self.order().min(denom.order());
        let mut q = vec![BigRational::zero(); n + 1];
        for i in 0..=n {
            let mut acc = self.coeffs[i].clone();
            for j in 0..i {
                acc -= &q[j] * &denom.coeffs[i - j];
            }
            q[i] = acc / &denom.coeffs[0];
        }
        Ok(Self { coeffs: q })
    }

    /// Composition `self(inner)`; requires `inner(0) = 0`.
    pub fn compose(&self, inner: &TruncSeries) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::CompositionRequiresZeroConstant);
        }
        let n = self.order().min(inner.order());
        // Horner evaluation, truncated at every step.
        let mut acc = TruncSeries::constant(self.coeffs[n].clone(), n);
        let inner = inner.truncate(n);
        for i in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += &self.coeffs[i];
        }
        Ok(acc)
    }

    /// Square root of a series with constant term 1.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::SqrtRequiresUnitConstant);
        }
        let n = self.order();
        let mut r = vec![BigRational::zero(); n + 1];
        r[0] = BigRational::one();
        let two = rat_i(2);
        for i in 1..=n {
            let mut acc = self.coeffs[i].clone();
            for j in 1..i {
                acc -= &r[j] * &r[i - j];
            }
            r[i] = acc / &two;
        }
        Ok(Self { coeffs: r })
    }
}

/// The Catalan number generating function `C(x)` through `x^order`,
/// built from the convolution recurrence.
pub fn catalan_series(order: usize) -> TruncSeries {
    TruncSeries {
        coeffs: catalan_numbers(order).iter().map(rat_u).collect(),
    }
}

/// The ordinary generating function `1 / (1 - x C(x C(x)))` counting
/// stack-sorting preimages of the class avoiding 231 and 321 by length.
pub fn preimage_gf_231_321(order: usize) -> TruncSeries {
    let c = catalan_series(order);
    let inner = c.mul_x_pow(1);
    let mid = c.compose(&inner).expect("x C(x) vanishes at 0");
    let w = mid.mul_x_pow(1);
    TruncSeries::one(order)
        .div(&TruncSeries::one(order).sub(&w))
        .expect("constant term 1")
}

/// The Boolean-Catalan generating function
/// `(1 - 2x - sqrt(1 - 4x - 4x^2)) / (4x)`, with zero constant term.
pub fn boolean_catalan_gf(order: usize) -> TruncSeries {
    let inner_order = order + 1;
    let radicand = TruncSeries::from_int_coeffs(&[1, -4, -4], inner_order);
    let root = radicand.sqrt().expect("constant term 1");
    let numerator = TruncSeries::from_int_coeffs(&[1, -2], inner_order).sub(&root);
    numerator
        .div_x_pow(1)
        .expect("numerator has valuation 2")
        .scale(&BigRational::new(BigInt::one(), BigInt::from(4)))
}

/// The quartic `Q(a, x) = 1 - 3a + (3 + 2x)a^2 + (-1 - 4x + 2x^2)a^3
/// + (2x - 2x^2 + x^3)a^4` evaluated at a series argument. The generating
/// function of the 231,321 preimage counts is a root of this quartic.
pub fn quartic_residual(a: &TruncSeries) -> TruncSeries {
    let n = a.order();
    let q0 = TruncSeries::from_int_coeffs(&[1], n);
    let q1 = TruncSeries::from_int_coeffs(&[-3], n);
    let q2 = TruncSeries::from_int_coeffs(&[3, 2], n);
    let q3 = TruncSeries::from_int_coeffs(&[-1, -4, 2], n);
    let q4 = TruncSeries::from_int_coeffs(&[0, 2, -2, 1], n);
    let a2 = a.mul(a);
    let a3 = a2.mul(a);
    let a4 = a3.mul(a);
    q0.add(&q1.mul(a))
        .add(&q2.mul(&a2))
        .add(&q3.mul(&a3))
        .add(&q4.mul(&a4))
}

/// The divided difference `(C(x) - C(y)) / (x - y)` evaluated at `y = g(x)`
/// through its double-sum expansion `sum_{i,j >= 0} C_{i+j+1} x^i y^j`.
fn divided_difference_at(g: &TruncSeries) -> TruncSeries {
    let n = g.order();
    let cat = catalan_numbers(2 * n + 1);
    let mut acc = TruncSeries::zero(n);
    let mut g_pow = TruncSeries::one(n);
    for j in 0..=n {
        if j > 0 {
            g_pow = g_pow.mul(g);
            if g_pow.is_zero() {
                break;
            }
        }
        let tail = TruncSeries {
            coeffs: (0..=n).map(|i| rat_u(&cat[i + j + 1])).collect(),
        };
        acc = acc.add(&tail.mul(&g_pow));
    }
    acc
}

/// Residual of the kernel equation for the 231,321 tail counts, cleared of
/// its `1/x` and `1/Y` poles: `x^2 Y DD(x, Y) - Y + x` where `DD` is the
/// Catalan divided difference. The kernel root makes this vanish.
pub fn kernel_residual_231_321(y: &TruncSeries) -> TruncSeries {
    let n = y.order();
    let dd = divided_difference_at(y);
    y.mul(&dd)
        .mul_x_pow(2)
        .sub(y)
        .add(&TruncSeries::x(n))
}

/// The unique power-series root `Y = x + O(x^2)` of the 231,321 kernel,
/// found by fixed-point iteration on `Y = x + x^2 Y DD(x, Y)`. Each pass
/// extends the agreement by at least one order; failure to reach a fixed
/// point within the order budget signals a bug.
pub fn kernel_root_231_321(order: usize) -> Result<TruncSeries> {
    assert!(order >= 1);
    let mut y = TruncSeries::x(order);
    for _ in 0..=order + 1 {
        let next = TruncSeries::x(order).add(&y.mul(&divided_difference_at(&y)).mul_x_pow(2));
        if next.agrees_with(&y) {
            return Ok(y);
        }
        y = next;
    }
    Err(Error::KernelNonConvergence)
}

/// Residual of the kernel equation for the 132,231 tail counts:
/// `x Y (C(Y) - 1) - Y + x`.
pub fn kernel_residual_132_231(y: &TruncSeries) -> TruncSeries {
    let n = y.order();
    let c_of_y = catalan_series(n).compose(y).expect("kernel root vanishes at 0");
    y.mul(&c_of_y.sub(&TruncSeries::one(n)))
        .mul_x_pow(1)
        .sub(y)
        .add(&TruncSeries::x(n))
}

/// The closed-form kernel root for the 132,231 tail counts:
/// `(3x + 2x^2 - x sqrt(1 - 4x - 4x^2)) / (2 (1 + x)^2)`.
pub fn kernel_root_132_231(order: usize) -> TruncSeries {
    let n = order + 2;
    let root = TruncSeries::from_int_coeffs(&[1, -4, -4], n).sqrt().expect("constant term 1");
    let numerator = TruncSeries::from_int_coeffs(&[0, 3, 2], n).sub(&root.mul_x_pow(1));
    let denominator = TruncSeries::from_int_coeffs(&[2, 4, 2], n);
    numerator.div(&denominator).expect("constant term 2").truncate(order)
}

/// A bivariate truncated series, dense over the box `x^0..=x^nx`,
/// `y^0..=y^ny` (the second variable is `z` in the descent-marked uses).
#[derive(Clone, Debug)]
pub struct BivarSeries {
    coeffs: Vec<Vec<BigRational>>,
}

impl BivarSeries {
    pub fn zero(nx: usize, ny: usize) -> Self {
        Self { coeffs: vec![vec![BigRational::zero(); ny + 1]; nx + 1] }
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.coeffs.len() - 1, self.coeffs[0].len() - 1)
    }

    pub fn coeff(&self, i: usize, j: usize) -> &BigRational {
        &self.coeffs[i][j]
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, v: BigRational) {
        self.coeffs[i][j] = v;
    }

    /// Embed a series in the first variable.
    pub fn from_x_series(f: &TruncSeries, ny: usize) -> Self {
        let mut s = Self::zero(f.order(), ny);
        for (i, c) in f.coefficients().iter().enumerate() {
            s.coeffs[i][0] = c.clone();
        }
        s
    }

    /// Embed a series in the second variable.
    pub fn from_y_series(f: &TruncSeries, nx: usize) -> Self {
        let mut s = Self::zero(nx, f.order());
        for (j, c) in f.coefficients().iter().enumerate() {
            s.coeffs[0][j] = c.clone();
        }
        s
    }

    /// The monomial `x^i y^j` on the given box (zero if it does not fit).
    pub fn monomial(nx: usize, ny: usize, i: usize, j: usize) -> Self {
        let mut s = Self::zero(nx, ny);
        if i <= nx && j <= ny {
            s.coeffs[i][j] = BigRational::one();
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|row| row.iter().all(|c| c.is_zero()))
    }

    /// The lexicographically first nonzero coefficient, for failure reports.
    pub fn first_nonzero(&self) -> Option<(usize, usize, BigRational)> {
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    return Some((i, j, c.clone()));
                }
            }
        }
        None
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|r| r.iter().map(|c| -c).collect()).collect(),
        }
    }

    pub fn add(&self, other: &BivarSeries) -> Self {
        let (nx, ny) = self.common_box(other);
        let mut out = Self::zero(nx, ny);
        for i in 0..=nx {
            for j in 0..=ny {
                out.coeffs[i][j] = &self.coeffs[i][j] + &other.coeffs[i][j];
            }
        }
        out
    }

    pub fn sub(&self, other: &BivarSeries) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BivarSeries) -> Self {
        let (nx, ny) = self.common_box(other);
        let mut out = Self::zero(nx, ny);
        for i1 in 0..=nx {
            for j1 in 0..=ny {
                let a = &self.coeffs[i1][j1];
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..=nx - i1 {
                    for j2 in 0..=ny - j1 {
                        let b = &other.coeffs[i2][j2];
                        if !b.is_zero() {
                            let prod = a * b;
                            out.coeffs[i1 + i2][j1 + j2] += prod;
                        }
                    }
                }
            }
        }
        out
    }

    /// Multiply by `x^a y^b`, keeping the box.
    pub fn shift(&self, a: usize, b: usize) -> Self {
        let (nx, ny) = self.orders();
        let mut out = Self::zero(nx, ny);
        for i in 0..=nx.saturating_sub(a) {
            for j in 0..=ny.saturating_sub(b) {
                out.coeffs[i + a][j + b] = self.coeffs[i][j].clone();
            }
        }
        out
    }

    /// `1 / (1 - w)` for `w` with positive valuation in the first variable,
    /// via the geometric sum.
    pub fn geometric_inverse_of(w: &BivarSeries) -> Result<Self> {
        let (nx, ny) = w.orders();
        let val = w
            .coeffs
            .iter()
            .position(|row| row.iter().any(|c| !c.is_zero()))
            .unwrap_or(nx + 1);
        if val == 0 {
            return Err(Error::DivisionByNonUnit);
        }
        let mut acc = Self::zero(nx, ny);
        acc.coeffs[0][0] = BigRational::one();
        let mut w_pow = acc.clone();
        for _ in 0..=nx / val {
            w_pow = w_pow.mul(w);
            if w_pow.is_zero() {
                break;
            }
            acc = acc.add(&w_pow);
        }
        Ok(acc)
    }

    fn common_box(&self, other: &BivarSeries) -> (usize, usize) {
        let (ax, ay) = self.orders();
        let (bx, by) = other.orders();
        (ax.min(bx), ay.min(by))
    }
}

/// The bivariate divided difference `sum_{i,j} C_{i+j+1} x^i y^j`.
pub fn divided_difference_bivar(nx: usize, ny: usize) -> BivarSeries {
    let cat = catalan_numbers(nx + ny + 1);
    let mut s = BivarSeries::zero(nx, ny);
    for i in 0..=nx {
        for j in 0..=ny {
            s.set_coeff(i, j, rat_u(&cat[i + j + 1]));
        }
    }
    s
}

/// The descent-marked generating function `x + x * sum_{k, n} c(n, k) x^n z^k`
/// where `c(n, k)` is the closed-form preimage count of the `k`-descent
/// members of the 231,312,321-avoiders; variables are `(x, z)`.
pub fn descent_marked_gf(nx: usize, nz: usize) -> BivarSeries {
    let mut s = BivarSeries::zero(nx, nz);
    if nx >= 1 {
        s.set_coeff(1, 0, BigRational::one());
    }
    for k in 0..=nz {
        let mut n = 2 * k + 1;
        while n + 1 <= nx {
            let c = closed_form_231_312_321(n, k);
            let prev = s.coeff(n + 1, k).clone();
            s.set_coeff(n + 1, k, prev + rat_u(&c));
            n += 1;
        }
    }
    s
}

/// Residual of the fixed-point equation for the descent-marked generating
/// function: `J - x - J^2 / (1 - z J^2)`, zero through the box.
pub fn descent_marked_residual(j: &BivarSeries) -> Result<BivarSeries> {
    let (nx, nz) = j.orders();
    let j2 = j.mul(j);
    let w = j2.shift(0, 1);
    let inv = BivarSeries::geometric_inverse_of(&w)?;
    let x = BivarSeries::from_x_series(&TruncSeries::x(nx), nz);
    Ok(j.sub(&x).sub(&j2.mul(&inv)))
}

/// `I(x, y) = sum_{l, n} B_{>=l}(n) x^n y^l` from a refined count table.
pub fn tail_gf_from_table(table: &RefinedTable, nx: usize, ny: usize) -> BivarSeries {
    assert!(
        nx + ny <= table.max_total(),
        "table only covers totals up to {}",
        table.max_total()
    );
    let mut s = BivarSeries::zero(nx, ny);
    for n in 0..=nx {
        for l in 0..=ny {
            s.set_coeff(n, l, rat_u(&table.at_least(l, n)));
        }
    }
    s
}

/// The `y = 0` slice of a bivariate series, embedded back along `x`.
fn y_slice_zero(s: &BivarSeries) -> BivarSeries {
    let (nx, ny) = s.orders();
    let mut out = BivarSeries::zero(nx, ny);
    for i in 0..=nx {
        out.set_coeff(i, 0, s.coeff(i, 0).clone());
    }
    out
}

/// Residual of the 231,321 tail functional equation, cleared of poles by
/// multiplying through by `x y`:
/// `(I - I0)(x^3 y DD - x y + x^2) - x y (I0 - C(y))`.
pub fn tail_equation_residual_231_321(
    table: &RefinedTable,
    nx: usize,
    ny: usize,
) -> BivarSeries {
    let i_xy = tail_gf_from_table(table, nx, ny);
    let i_0 = y_slice_zero(&i_xy);
    let diff = i_xy.sub(&i_0);
    let dd = divided_difference_bivar(nx, ny);
    let c_y = BivarSeries::from_y_series(&catalan_series(ny), nx);
    let kernel = dd
        .shift(3, 1)
        .sub(&BivarSeries::monomial(nx, ny, 1, 1))
        .add(&BivarSeries::monomial(nx, ny, 2, 0));
    diff.mul(&kernel).sub(&i_0.sub(&c_y).shift(1, 1))
}

/// Residual of the 132,231 tail functional equation:
/// `I (x y (C(y) - 1) - y + x) - (-y C(y) + x I0 + x y C(y) (C(y) - 1))`.
pub fn tail_equation_residual_132_231(
    table: &RefinedTable,
    nx: usize,
    ny: usize,
) -> BivarSeries {
    let i_xy = tail_gf_from_table(table, nx, ny);
    let i_0 = y_slice_zero(&i_xy);
    let one = BivarSeries::monomial(nx, ny, 0, 0);
    let c_y = BivarSeries::from_y_series(&catalan_series(ny), nx);
    let c_minus_1 = c_y.sub(&one);
    let kernel = c_minus_1
        .shift(1, 1)
        .sub(&BivarSeries::monomial(nx, ny, 0, 1))
        .add(&BivarSeries::monomial(nx, ny, 1, 0));
    let rhs = c_y
        .shift(0, 1)
        .neg()
        .add(&i_0.shift(1, 0))
        .add(&c_y.mul(&c_minus_1).shift(1, 1));
    i_xy.mul(&kernel).sub(&rhs)
}

/// A trivariate truncated series over the box `(x, y, z)`, used only for
/// the descent-refined tail functional equation.
#[derive(Clone, Debug)]
pub struct TrivarSeries {
    coeffs: Vec<Vec<Vec<BigRational>>>,
}

impl TrivarSeries {
    pub fn zero(nx: usize, ny: usize, nz: usize) -> Self {
        Self {
            coeffs: vec![vec![vec![BigRational::zero(); nz + 1]; ny + 1]; nx + 1],
        }
    }

    pub fn orders(&self) -> (usize, usize, usize) {
        (
            self.coeffs.len() - 1,
            self.coeffs[0].len() - 1,
            self.coeffs[0][0].len() - 1,
        )
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &BigRational {
        &self.coeffs[i][j][k]
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, k: usize, v: BigRational) {
        self.coeffs[i][j][k] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs
            .iter()
            .all(|p| p.iter().all(|r| r.iter().all(|c| c.is_zero())))
    }

    pub fn first_nonzero(&self) -> Option<(usize, usize, usize, BigRational)> {
        for (i, plane) in self.coeffs.iter().enumerate() {
            for (j, row) in plane.iter().enumerate() {
                for (k, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        return Some((i, j, k, c.clone()));
                    }
                }
            }
        }
        None
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for p in &mut out.coeffs {
            for r in p {
                for c in r {
                    *c = -c.clone();
                }
            }
        }
        out
    }

    pub fn add(&self, other: &TrivarSeries) -> Self {
        let (nx, ny, nz) = self.common_box(other);
        let mut out = Self::zero(nx, ny, nz);
        for i in 0..=nx {
            for j in 0..=ny {
                for k in 0..=nz {
                    out.coeffs[i][j][k] = &self.coeffs[i][j][k] + &other.coeffs[i][j][k];
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &TrivarSeries) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &TrivarSeries) -> Self {
        let (nx, ny, nz) = self.common_box(other);
        let mut out = Self::zero(nx, ny, nz);
        for i1 in 0..=nx {
            for j1 in 0..=ny {
                for k1 in 0..=nz {
                    let a = &self.coeffs[i1][j1][k1];
                    if a.is_zero() {
                        continue;
                    }
                    for i2 in 0..=nx - i1 {
                        for j2 in 0..=ny - j1 {
                            for k2 in 0..=nz - k1 {
                                let b = &other.coeffs[i2][j2][k2];
                                if !b.is_zero() {
                                    out.coeffs[i1 + i2][j1 + j2][k1 + k2] += a * b;
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn shift(&self, a: usize, b: usize, c: usize) -> Self {
        let (nx, ny, nz) = self.orders();
        let mut out = Self::zero(nx, ny, nz);
        for i in 0..=nx.saturating_sub(a) {
            for j in 0..=ny.saturating_sub(b) {
                for k in 0..=nz.saturating_sub(c) {
                    out.coeffs[i + a][j + b][k + c] = self.coeffs[i][j][k].clone();
                }
            }
        }
        out
    }

    /// Embed a univariate series along the `y` axis.
    pub fn from_y_series(f: &TruncSeries, nx: usize, nz: usize) -> Self {
        let mut s = Self::zero(nx, f.order(), nz);
        for (j, c) in f.coefficients().iter().enumerate() {
            s.coeffs[0][j][0] = c.clone();
        }
        s
    }

    fn common_box(&self, other: &TrivarSeries) -> (usize, usize, usize) {
        let (ax, ay, az) = self.orders();
        let (bx, by, bz) = other.orders();
        (ax.min(bx), ay.min(by), az.min(bz))
    }
}

/// `J(x, y, z) = sum B_{>=l}(n, k) x^n y^l z^k` from a descent table.
pub fn descent_tail_gf_from_table(
    table: &DescentTable,
    nx: usize,
    ny: usize,
    nz: usize,
) -> TrivarSeries {
    assert!(
        nx + ny <= table.max_total(),
        "table only covers totals up to {}",
        table.max_total()
    );
    let mut s = TrivarSeries::zero(nx, ny, nz);
    for n in 0..=nx {
        for l in 0..=ny {
            for k in 0..=nz {
                s.set_coeff(n, l, k, rat_u(&table.at_least(l, n, k)));
            }
        }
    }
    s
}

/// Residual of the descent-refined tail functional equation, cleared of its
/// `1/y` pole: `(J - J0)(x^2 z (C(y) - 1) + x - y) - y (J0 - C(y))`.
pub fn tail_equation_residual_231_312_321(
    table: &DescentTable,
    nx: usize,
    ny: usize,
    nz: usize,
) -> TrivarSeries {
    let j_xyz = descent_tail_gf_from_table(table, nx, ny, nz);
    let mut j_0 = TrivarSeries::zero(nx, ny, nz);
    for i in 0..=nx {
        for k in 0..=nz {
            j_0.set_coeff(i, 0, k, j_xyz.coeff(i, 0, k).clone());
        }
    }
    let one = {
        let mut s = TrivarSeries::zero(nx, ny, nz);
        s.set_coeff(0, 0, 0, BigRational::one());
        s
    };
    let c_y = TrivarSeries::from_y_series(&catalan_series(ny), nx, nz);
    let kernel = c_y
        .sub(&one)
        .shift(2, 0, 1)
        .add(&one.shift(1, 0, 0))
        .sub(&one.shift(0, 1, 0));
    j_xyz
        .sub(&j_0)
        .mul(&kernel)
        .sub(&j_0.sub(&c_y).shift(0, 1, 0))
}
