use super::{Fe, FfError, Field};
use serde::{Deserialize, Serialize};

/// Dense coefficient-form polynomial over the field, lowest degree first.
/// Canonical form has no trailing zero coefficient; the zero polynomial is
/// the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Polynomial {
    pub coeffs: Vec<Fe>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last() == Some(&Fe::ZERO) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Fe) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the convention that the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn constant_term(&self) -> Fe {
        self.coeffs.first().copied().unwrap_or(Fe::ZERO)
    }

    pub fn add(&self, f: &Field, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Fe::ZERO; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(Fe::ZERO);
            let b = other.coeffs.get(i).copied().unwrap_or(Fe::ZERO);
            *slot = f.add(a, b);
        }
        Polynomial::new(out)
    }

    pub fn sub(&self, f: &Field, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Fe::ZERO; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(Fe::ZERO);
            let b = other.coeffs.get(i).copied().unwrap_or(Fe::ZERO);
            *slot = f.sub(a, b);
        }
        Polynomial::new(out)
    }

    pub fn scale(&self, f: &Field, k: Fe) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| f.mul(c, k)).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Fe::ZERO; k];
        out.extend_from_slice(&self.coeffs);
        Polynomial { coeffs: out }
    }

    /// Euclidean division, returning `(quotient, remainder)`.
    pub fn divmod(&self, f: &Field, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Polynomial::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dlen = divisor.coeffs.len();
        let lead_inv = f.inv(*divisor.coeffs.last().unwrap());
        let qlen = rem.len() - dlen + 1;
        let mut quot = vec![Fe::ZERO; qlen];
        for qi in (0..qlen).rev() {
            let c = f.mul(rem[qi + dlen - 1], lead_inv);
            if c == Fe::ZERO {
                continue;
            }
            quot[qi] = c;
            for (k, &dc) in divisor.coeffs.iter().enumerate() {
                rem[qi + k] = f.sub(rem[qi + k], f.mul(c, dc));
            }
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }
}

/// Horner evaluation.
pub fn poly_eval(f: &Field, q: &Polynomial, x: Fe) -> Fe {
    let mut acc = Fe::ZERO;
    for &c in q.coeffs.iter().rev() {
        acc = f.add(f.mul(acc, x), c);
    }
    acc
}

/// Schoolbook convolution. Degree adds; pointwise products agree with
/// `poly_eval` by distributivity.
pub fn poly_mul(f: &Field, a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero();
    }
    let mut out = vec![Fe::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
    for (i, &ai) in a.coeffs.iter().enumerate() {
        if ai == Fe::ZERO {
            continue;
        }
        for (j, &bj) in b.coeffs.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(ai, bj));
        }
    }
    Polynomial::new(out)
}

/// Lagrange interpolation through distinct points, in coefficient form.
/// The result has degree < number of points.
pub fn lagrange_interpolate(f: &Field, points: &[(Fe, Fe)]) -> Result<Polynomial, FfError> {
    if points.is_empty() {
        return Err(FfError::EmptyInput);
    }
    for (i, (xi, _)) in points.iter().enumerate() {
        for (xj, _) in &points[..i] {
            if xi == xj {
                return Err(FfError::DuplicateAbscissa);
            }
        }
    }
    // master = prod (x - x_i); each basis polynomial is master / (x - x_i),
    // scaled by y_i / prod_{j != i} (x_i - x_j).
    let mut master = Polynomial::constant(Fe::ONE);
    for &(xi, _) in points {
        master = poly_mul(f, &master, &Polynomial::new(vec![f.neg(xi), Fe::ONE]));
    }
    let mut acc = Polynomial::zero();
    for &(xi, yi) in points {
        if yi == Fe::ZERO {
            continue;
        }
        let (basis, rem) = master.divmod(f, &Polynomial::new(vec![f.neg(xi), Fe::ONE]));
        debug_assert!(rem.is_zero());
        let denom = poly_eval(f, &basis, xi);
        acc = acc.add(f, &basis.scale(f, f.mul(yi, f.inv(denom))));
    }
    Ok(acc)
}

/// Lagrange coefficients for evaluating at `x` a polynomial known by its
/// values on `nodes`: returns `L` with `q(x) = sum L[i] * q(nodes[i])`.
/// Nodes must be distinct.
pub fn lagrange_coeffs_at(f: &Field, nodes: &[Fe], x: Fe) -> Vec<Fe> {
    if let Some(k) = nodes.iter().position(|&n| n == x) {
        let mut out = vec![Fe::ZERO; nodes.len()];
        out[k] = Fe::ONE;
        return out;
    }
    // prefix/suffix products of (x - node) give each numerator in O(n);
    // denominators are batch-inverted.
    let n = nodes.len();
    let diffs: Vec<Fe> = nodes.iter().map(|&nd| f.sub(x, nd)).collect();
    let mut prefix = vec![Fe::ONE; n + 1];
    for i in 0..n {
        prefix[i + 1] = f.mul(prefix[i], diffs[i]);
    }
    let mut suffix = vec![Fe::ONE; n + 1];
    for i in (0..n).rev() {
        suffix[i] = f.mul(suffix[i + 1], diffs[i]);
    }
    let mut denoms = Vec::with_capacity(n);
    for i in 0..n {
        let mut d = Fe::ONE;
        for j in 0..n {
            if j != i {
                d = f.mul(d, f.sub(nodes[i], nodes[j]));
            }
        }
        denoms.push(d);
    }
    let inv = batch_invert(f, &denoms);
    (0..n).map(|i| f.mul(f.mul(prefix[i], suffix[i + 1]), inv[i])).collect()
}

/// Montgomery batch inversion: one field inversion for the whole slice.
pub fn batch_invert(f: &Field, xs: &[Fe]) -> Vec<Fe> {
    let mut acc = Fe::ONE;
    let mut partials = Vec::with_capacity(xs.len());
    for &x in xs {
        partials.push(acc);
        acc = f.mul(acc, x);
    }
    let mut inv = f.inv(acc);
    let mut out = vec![Fe::ZERO; xs.len()];
    for i in (0..xs.len()).rev() {
        out[i] = f.mul(partials[i], inv);
        inv = f.mul(inv, xs[i]);
    }
    out
}
