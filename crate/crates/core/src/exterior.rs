//! Exterior algebra over the dual of a metric vector space with diagonal
//! `±1` metric, in any dimension.
//!
//! A p-form is stored densely as its fully antisymmetric component array
//! `α_{a1…ap}` with `α = (1/p!) α_{a1…ap} θ^{a1} ∧ … ∧ θ^{ap}`, so the
//! stored numbers are the tensor components. Index tuples are flattened
//! row-major (first index slowest).

use crate::error::{Error, Result};
use std::ops::{Add, Mul, Neg, Sub};

/// Diagonal metric with entries `±1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metric {
    signature: Vec<i8>,
}

impl Metric {
    pub fn new(signature: Vec<i8>) -> Result<Self> {
        if signature.is_empty() {
            return Err(Error::InvalidInput("metric dimension must be positive".into()));
        }
        if signature.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::InvalidInput("metric entries must be +1 or -1".into()));
        }
        Ok(Metric { signature })
    }

    /// `diag(+1, -1, -1, -1)`.
    pub fn minkowski() -> Self {
        Metric { signature: vec![1, -1, -1, -1] }
    }

    /// `diag(+1, -1, …, -1)` in dimension `n`.
    pub fn lorentzian(n: usize) -> Self {
        let mut signature = vec![-1; n];
        signature[0] = 1;
        Metric { signature }
    }

    pub fn euclidean(n: usize) -> Self {
        Metric { signature: vec![1; n] }
    }

    pub fn dim(&self) -> usize {
        self.signature.len()
    }

    /// Number of `-1` entries.
    pub fn n_minus(&self) -> usize {
        self.signature.iter().filter(|s| **s < 0).count()
    }

    /// `η_aa` (equal to `η^aa`).
    pub fn eta(&self, a: usize) -> f64 {
        f64::from(self.signature[a])
    }

    pub fn signature(&self) -> &[i8] {
        &self.signature
    }

    /// `η(v, w)`.
    pub fn inner(&self, v: &[f64], w: &[f64]) -> f64 {
        (0..self.dim()).map(|a| self.eta(a) * v[a] * w[a]).sum()
    }
}

/// A totally antisymmetric covariant tensor of grade `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct PForm {
    dim: usize,
    grade: usize,
    comps: Vec<f64>,
}

impl PForm {
    pub fn zero(dim: usize, grade: usize) -> Self {
        PForm { dim, grade, comps: vec![0.0; dim.pow(grade as u32)] }
    }

    pub fn scalar(dim: usize, value: f64) -> Self {
        PForm { dim, grade: 0, comps: vec![value] }
    }

    /// Grade-1 form from its components.
    pub fn covector(comps: &[f64]) -> Self {
        PForm { dim: comps.len(), grade: 1, comps: comps.to_vec() }
    }

    /// Wrap a raw component array. Antisymmetry is not checked; use
    /// [`PForm::antisymmetry_defect`] when the source is untrusted.
    pub fn from_components(dim: usize, grade: usize, comps: Vec<f64>) -> Result<Self> {
        if comps.len() != dim.pow(grade as u32) {
            return Err(Error::DimensionMismatch {
                expected: dim.pow(grade as u32),
                found: comps.len(),
            });
        }
        Ok(PForm { dim, grade, comps })
    }

    /// Build from a function of strictly increasing index tuples; all
    /// other components follow by antisymmetry.
    pub fn from_independent(dim: usize, grade: usize, mut f: impl FnMut(&[usize]) -> f64) -> Self {
        let mut form = PForm::zero(dim, grade);
        for set in increasing_tuples(dim, grade) {
            let value = f(&set);
            if value != 0.0 {
                form.fill_antisymmetric(&set, value);
            }
        }
        form
    }

    /// The monomial `θ^{a1} ∧ … ∧ θ^{ap}` (indices need not be sorted).
    pub fn monomial(dim: usize, indices: &[usize]) -> Self {
        let mut form = PForm::zero(dim, indices.len());
        let mut sorted = indices.to_vec();
        let sign = sort_sign(&mut sorted);
        if sign != 0 {
            form.fill_antisymmetric(&sorted, f64::from(sign));
        }
        form
    }

    fn fill_antisymmetric(&mut self, sorted: &[usize], value: f64) {
        for (perm, sign) in permutations(sorted.len()) {
            let idx: Vec<usize> = perm.iter().map(|&k| sorted[k]).collect();
            let flat = self.flat(&idx);
            self.comps[flat] = f64::from(sign) * value;
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn components(&self) -> &[f64] {
        &self.comps
    }

    fn flat(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    fn unflat(&self, mut flat: usize, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = flat % self.dim;
            flat /= self.dim;
        }
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        debug_assert_eq!(idx.len(), self.grade);
        self.comps[self.flat(idx)]
    }

    /// Scalar value of a grade-0 form.
    pub fn value(&self) -> f64 {
        self.comps[0]
    }

    /// Largest `|α_I + α_{τI}|` over all single transpositions `τ`.
    pub fn antisymmetry_defect(&self) -> f64 {
        let mut defect: f64 = 0.0;
        let mut idx = vec![0; self.grade];
        for flat in 0..self.comps.len() {
            self.unflat(flat, &mut idx);
            for i in 0..self.grade {
                for j in i + 1..self.grade {
                    let mut swapped = idx.clone();
                    swapped.swap(i, j);
                    let other = self.comps[self.flat(&swapped)];
                    defect = defect.max((self.comps[flat] + other).abs());
                }
            }
        }
        defect
    }

    pub fn max_abs(&self) -> f64 {
        self.comps.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn max_abs_diff(&self, other: &PForm) -> f64 {
        assert_eq!((self.dim, self.grade), (other.dim, other.grade));
        self.comps
            .iter()
            .zip(&other.comps)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Evaluate on `p` vectors: `α(v1, …, vp) = α_{a1…ap} v1^{a1} ⋯ vp^{ap}`.
    pub fn evaluate(&self, vectors: &[&[f64]]) -> f64 {
        assert_eq!(vectors.len(), self.grade);
        let mut idx = vec![0; self.grade];
        let mut total = 0.0;
        for (flat, c) in self.comps.iter().enumerate() {
            if *c == 0.0 {
                continue;
            }
            self.unflat(flat, &mut idx);
            let mut term = *c;
            for (k, v) in vectors.iter().enumerate() {
                term *= v[idx[k]];
            }
            total += term;
        }
        total
    }

    fn check_dim(&self, other: &PForm) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }
}

impl Add for &PForm {
    type Output = PForm;
    fn add(self, rhs: &PForm) -> PForm {
        assert_eq!((self.dim, self.grade), (rhs.dim, rhs.grade));
        PForm {
            dim: self.dim,
            grade: self.grade,
            comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &PForm {
    type Output = PForm;
    fn sub(self, rhs: &PForm) -> PForm {
        assert_eq!((self.dim, self.grade), (rhs.dim, rhs.grade));
        PForm {
            dim: self.dim,
            grade: self.grade,
            comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<f64> for &PForm {
    type Output = PForm;
    fn mul(self, s: f64) -> PForm {
        PForm { dim: self.dim, grade: self.grade, comps: self.comps.iter().map(|c| c * s).collect() }
    }
}

impl Neg for &PForm {
    type Output = PForm;
    fn neg(self) -> PForm {
        self * -1.0
    }
}

/// `v^♭ = η(v, ·)`.
pub fn lower(v: &[f64], g: &Metric) -> Result<PForm> {
    if v.len() != g.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: v.len() });
    }
    Ok(PForm::covector(&(0..g.dim()).map(|a| g.eta(a) * v[a]).collect::<Vec<_>>()))
}

/// Inverse of [`lower`].
pub fn raise(alpha: &PForm, g: &Metric) -> Result<Vec<f64>> {
    if alpha.grade != 1 {
        return Err(Error::GradeMismatch { expected: 1, found: alpha.grade });
    }
    if alpha.dim != g.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: alpha.dim });
    }
    Ok((0..g.dim()).map(|a| g.eta(a) * alpha.comps[a]).collect())
}

/// `α ∧ β = ((p+q)!/(p! q!)) Alt(α ⊗ β)`. Returns the zero form of grade
/// `p+q` when that exceeds the dimension.
pub fn wedge(alpha: &PForm, beta: &PForm) -> Result<PForm> {
    alpha.check_dim(beta)?;
    let (p, q, n) = (alpha.grade, beta.grade, alpha.dim);
    if p + q > n {
        return Ok(PForm::zero(n, p + q));
    }
    let norm = 1.0 / (factorial(p) * factorial(q));
    let perms = permutations(p + q);
    let mut a_idx = vec![0; p];
    let mut b_idx = vec![0; q];
    Ok(PForm::from_independent(n, p + q, |set| {
        let mut sum = 0.0;
        for (perm, sign) in &perms {
            for k in 0..p {
                a_idx[k] = set[perm[k]];
            }
            for k in 0..q {
                b_idx[k] = set[perm[p + k]];
            }
            sum += f64::from(*sign) * alpha.get(&a_idx) * beta.get(&b_idx);
        }
        sum * norm
    }))
}

/// `⟨α, β⟩_norm = (1/p!) α_{a1…ap} β^{a1…ap}`.
pub fn inner_norm(alpha: &PForm, beta: &PForm, g: &Metric) -> Result<f64> {
    alpha.check_dim(beta)?;
    if alpha.grade != beta.grade {
        return Err(Error::GradeMismatch { expected: alpha.grade, found: beta.grade });
    }
    if alpha.dim != g.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: alpha.dim });
    }
    // Sum over increasing tuples only; the p! orderings contribute equally.
    let mut total = 0.0;
    for set in increasing_tuples(alpha.dim, alpha.grade) {
        let weight: f64 = set.iter().map(|&a| g.eta(a)).product();
        total += alpha.get(&set) * beta.get(&set) * weight;
    }
    Ok(total)
}

/// The top form with `ε_{01…(n-1)} = orientation`.
pub fn volume_form(g: &Metric, orientation: i8) -> PForm {
    let sign = if orientation < 0 { -1.0 } else { 1.0 };
    PForm::from_independent(g.dim(), g.dim(), |_| sign)
}

/// `(⋆α)_{b1…b(n-p)} = (1/p!) α_{a1…ap} ε^{a1…ap}_{b1…b(n-p)}`, contracting
/// the first `p` slots of `ε`.
pub fn hodge(alpha: &PForm, g: &Metric, epsilon: &PForm) -> Result<PForm> {
    let n = g.dim();
    if alpha.dim != n || epsilon.dim != n {
        return Err(Error::DimensionMismatch { expected: n, found: alpha.dim });
    }
    if epsilon.grade != n {
        return Err(Error::GradeMismatch { expected: n, found: epsilon.grade });
    }
    let p = alpha.grade;
    let sets = increasing_tuples(n, p);
    let mut full = vec![0; n];
    Ok(PForm::from_independent(n, n - p, |b| {
        let mut sum = 0.0;
        for a in &sets {
            let c = alpha.get(a);
            if c == 0.0 {
                continue;
            }
            full[..p].copy_from_slice(a);
            full[p..].copy_from_slice(b);
            let e = epsilon.get(&full);
            if e == 0.0 {
                continue;
            }
            let raise: f64 = a.iter().map(|&i| g.eta(i)).product();
            sum += c * e * raise;
        }
        sum
    }))
}

/// `i_v α`: insert `v` into the first slot.
pub fn insert(v: &[f64], alpha: &PForm) -> Result<PForm> {
    if alpha.grade == 0 {
        return Err(Error::GradeMismatch { expected: 1, found: 0 });
    }
    if v.len() != alpha.dim {
        return Err(Error::DimensionMismatch { expected: alpha.dim, found: v.len() });
    }
    let n = alpha.dim;
    let mut out = PForm::zero(n, alpha.grade - 1);
    let stride = out.comps.len();
    for (a, va) in v.iter().enumerate() {
        if *va == 0.0 {
            continue;
        }
        for k in 0..stride {
            out.comps[k] += va * alpha.comps[a * stride + k];
        }
    }
    Ok(out)
}

/// Central-difference exterior derivative of a p-form field at `x`:
/// `(dω)_{a0…ap} = Σ_k (−1)^k ∂_{ak} ω_{a0…âk…ap}`.
pub fn exterior_derivative_fd(
    field: impl Fn(&[f64]) -> Result<PForm>,
    x: &[f64],
    h: f64,
) -> Result<PForm> {
    let n = x.len();
    let mut partials = Vec::with_capacity(n);
    for a in 0..n {
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[a] += h;
        xm[a] -= h;
        let fp = field(&xp)?;
        let fm = field(&xm)?;
        partials.push(&(&fp - &fm) * (0.5 / h));
    }
    let p = partials[0].grade;
    let mut rest = vec![0; p];
    Ok(PForm::from_independent(n, p + 1, |set| {
        let mut sum = 0.0;
        for k in 0..=p {
            let mut r = 0;
            for (j, &i) in set.iter().enumerate() {
                if j != k {
                    rest[r] = i;
                    r += 1;
                }
            }
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * partials[set[k]].get(&rest);
        }
        sum
    }))
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// All strictly increasing `p`-tuples from `0..n`.
pub fn increasing_tuples(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p <= n {
        rec(0, n, p, &mut Vec::with_capacity(p), &mut out);
    }
    out
}

/// All permutations of `0..k` with their signs (Heap's algorithm).
fn permutations(k: usize) -> Vec<(Vec<usize>, i8)> {
    let mut perm: Vec<usize> = (0..k).collect();
    let mut out = vec![(perm.clone(), 1)];
    let mut c = vec![0; k];
    let mut sign = 1;
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            out.push((perm.clone(), sign));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Sort in place and return the permutation sign, or 0 on a repeated index.
fn sort_sign(idx: &mut [usize]) -> i8 {
    let mut sign = 1;
    for i in 0..idx.len() {
        for j in 0..idx.len() - 1 - i {
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                sign = -sign;
            } else if idx[j] == idx[j + 1] {
                return 0;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return 0;
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mink() -> Metric {
        Metric::minkowski()
    }

    #[test]
    fn lower_and_raise() {
        let g = mink();
        assert_eq!(lower(&[1.0, 0.0, 0.0, 0.0], &g).unwrap().components(), &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(lower(&[0.0, 1.0, 0.0, 0.0], &g).unwrap().components(), &[0.0, -1.0, 0.0, 0.0]);
        let v = [0.3, -1.2, 2.5, 0.7];
        assert_eq!(raise(&lower(&v, &g).unwrap(), &g).unwrap(), v.to_vec());
        assert!(lower(&[1.0, 2.0], &g).is_err());
    }

    #[test]
    fn wedge_of_basis_covectors() {
        let t01 = wedge(&PForm::monomial(4, &[0]), &PForm::monomial(4, &[1])).unwrap();
        assert_eq!(t01.get(&[0, 1]), 1.0);
        assert_eq!(t01.get(&[1, 0]), -1.0);
        assert_eq!(t01.get(&[0, 0]), 0.0);
        assert_eq!(t01, PForm::monomial(4, &[0, 1]));
    }

    #[test]
    fn wedge_of_two_two_forms_is_volume() {
        let a = PForm::monomial(4, &[0, 1]);
        let b = PForm::monomial(4, &[2, 3]);
        assert_eq!(wedge(&a, &b).unwrap(), volume_form(&mink(), 1));
    }

    #[test]
    fn wedge_beyond_top_grade_is_zero() {
        let w = wedge(&PForm::monomial(4, &[0, 1, 2]), &PForm::monomial(4, &[1, 3])).unwrap();
        assert_eq!(w.grade(), 5);
        assert_eq!(w.max_abs(), 0.0);
    }

    #[test]
    fn odd_form_squares_to_zero() {
        let a = PForm::from_independent(4, 1, |s| [0.3, -1.0, 2.0, 0.5][s[0]]);
        assert_eq!(wedge(&a, &a).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn inner_products_of_basis_forms() {
        let g = mink();
        let t0 = PForm::monomial(4, &[0]);
        let t1 = PForm::monomial(4, &[1]);
        assert_eq!(inner_norm(&t0, &t0, &g).unwrap(), 1.0);
        assert_eq!(inner_norm(&t1, &t1, &g).unwrap(), -1.0);
        let t01 = PForm::monomial(4, &[0, 1]);
        assert_eq!(inner_norm(&t01, &t01, &g).unwrap(), -1.0);
        let eps = volume_form(&g, 1);
        assert_eq!(inner_norm(&eps, &eps, &g).unwrap(), -1.0);
        assert!(inner_norm(&t0, &t01, &g).is_err());
    }

    #[test]
    fn volume_form_orientation() {
        let g = mink();
        assert_eq!(volume_form(&g, 1).get(&[0, 1, 2, 3]), 1.0);
        assert_eq!(volume_form(&g, -1).get(&[0, 1, 2, 3]), -1.0);
        assert_eq!(volume_form(&g, 1).get(&[1, 0, 2, 3]), -1.0);
    }

    #[test]
    fn hodge_of_scalar_and_time_covector() {
        let g = mink();
        let eps = volume_form(&g, 1);
        assert_eq!(hodge(&PForm::scalar(4, 1.0), &g, &eps).unwrap(), eps);
        let star_t0 = hodge(&PForm::monomial(4, &[0]), &g, &eps).unwrap();
        assert_eq!(star_t0, PForm::monomial(4, &[1, 2, 3]));
    }

    #[test]
    fn insertion_examples() {
        let t01 = PForm::monomial(4, &[0, 1]);
        assert_eq!(insert(&[1.0, 0.0, 0.0, 0.0], &t01).unwrap(), PForm::monomial(4, &[1]));
        assert_eq!(insert(&[0.0, 0.0, 1.0, 0.0], &t01).unwrap().max_abs(), 0.0);
        assert!(insert(&[1.0, 0.0, 0.0, 0.0], &PForm::scalar(4, 2.0)).is_err());
    }

    #[test]
    fn monomial_with_repeat_is_zero() {
        assert_eq!(PForm::monomial(4, &[1, 1]).max_abs(), 0.0);
        assert_eq!(PForm::monomial(4, &[2, 0]).get(&[0, 2]), -1.0);
    }

    #[test]
    fn exterior_derivative_of_linear_one_form() {
        // ω = x^1 θ^2 − x^2 θ^1 has dω = 2 θ^1 ∧ θ^2.
        let field = |x: &[f64]| Ok(PForm::covector(&[0.0, -x[2], x[1], 0.0]));
        let d = exterior_derivative_fd(field, &[0.1, 0.2, 0.3, 0.4], 1e-3).unwrap();
        assert!((d.get(&[1, 2]) - 2.0).abs() < 1e-12);
        assert!((d.get(&[2, 1]) + 2.0).abs() < 1e-12);
        assert!(d.get(&[0, 3]).abs() < 1e-12);
    }

    #[test]
    fn permutation_count_and_signs() {
        let perms = permutations(4);
        assert_eq!(perms.len(), 24);
        assert_eq!(perms.iter().map(|(_, s)| i32::from(*s)).sum::<i32>(), 0);
    }
}
