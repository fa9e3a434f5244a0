//! Fixed four-dimensional Minkowski tensors in an orthonormal basis.
//!
//! Index 0 is time; the metric is `diag(+1, -1, -1, -1)`. Vectors are
//! contravariant, covectors covariant, and bivectors are contravariant
//! antisymmetric arrays `M^{ab}`. The mixed endomorphism `M^a_b` used by
//! the Lie algebra is obtained by lowering the second slot, so that
//! `(a ∧ b)·c = a η(b,c) − b η(a,c)`.

use nalgebra::Matrix4;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

/// Diagonal of the Minkowski metric.
pub const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// The metric as a matrix. It is its own inverse.
pub fn eta_matrix() -> Matrix4<f64> {
    Matrix4::from_diagonal(&nalgebra::Vector4::from(ETA))
}

/// A contravariant four-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MinkVector(pub [f64; 4]);

/// A covariant four-vector (a one-form).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Covector(pub [f64; 4]);

impl MinkVector {
    pub const ZERO: MinkVector = MinkVector([0.0; 4]);

    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        MinkVector([t, x, y, z])
    }

    /// Canonical basis vector `e_a`.
    pub fn basis(a: usize) -> Self {
        let mut v = [0.0; 4];
        v[a] = 1.0;
        MinkVector(v)
    }

    /// Unit timelike vector `γ(1, v)` for a spatial velocity with `|v| < 1`.
    pub fn from_velocity(v: [f64; 3]) -> Self {
        let v2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        let gamma = 1.0 / (1.0 - v2).sqrt();
        MinkVector([gamma, gamma * v[0], gamma * v[1], gamma * v[2]])
    }

    /// Spatial velocity `v^i / v^0`.
    pub fn velocity(&self) -> [f64; 3] {
        [self.0[1] / self.0[0], self.0[2] / self.0[0], self.0[3] / self.0[0]]
    }

    pub fn dot(&self, other: &MinkVector) -> f64 {
        (0..4).map(|a| ETA[a] * self.0[a] * other.0[a]).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    /// `sqrt(|η(v,v)|)`.
    pub fn norm(&self) -> f64 {
        self.norm_sq().abs().sqrt()
    }

    pub fn lower(&self) -> Covector {
        Covector(std::array::from_fn(|a| ETA[a] * self.0[a]))
    }

    pub fn is_timelike(&self) -> bool {
        self.norm_sq() > 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Euclidean norm of the components in the storage chart.
    pub fn euclidean_norm(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn wedge(&self, other: &MinkVector) -> Bivector {
        Bivector(std::array::from_fn(|a| {
            std::array::from_fn(|b| self.0[a] * other.0[b] - self.0[b] * other.0[a])
        }))
    }

    pub fn to_nalgebra(&self) -> nalgebra::Vector4<f64> {
        nalgebra::Vector4::from(self.0)
    }

    pub fn from_nalgebra(v: &nalgebra::Vector4<f64>) -> Self {
        MinkVector([v[0], v[1], v[2], v[3]])
    }

    /// Apply a matrix acting on contravariant components.
    pub fn transform(&self, m: &Matrix4<f64>) -> Self {
        Self::from_nalgebra(&(m * self.to_nalgebra()))
    }
}

impl Covector {
    pub fn raise(&self) -> MinkVector {
        MinkVector(std::array::from_fn(|a| ETA[a] * self.0[a]))
    }

    pub fn apply(&self, v: &MinkVector) -> f64 {
        (0..4).map(|a| self.0[a] * v.0[a]).sum()
    }
}

impl Index<usize> for MinkVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for MinkVector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl Add for MinkVector {
    type Output = MinkVector;
    fn add(self, rhs: MinkVector) -> MinkVector {
        MinkVector(std::array::from_fn(|a| self.0[a] + rhs.0[a]))
    }
}

impl AddAssign for MinkVector {
    fn add_assign(&mut self, rhs: MinkVector) {
        *self = *self + rhs;
    }
}

impl Sub for MinkVector {
    type Output = MinkVector;
    fn sub(self, rhs: MinkVector) -> MinkVector {
        MinkVector(std::array::from_fn(|a| self.0[a] - rhs.0[a]))
    }
}

impl SubAssign for MinkVector {
    fn sub_assign(&mut self, rhs: MinkVector) {
        *self = *self - rhs;
    }
}

impl Neg for MinkVector {
    type Output = MinkVector;
    fn neg(self) -> MinkVector {
        MinkVector(self.0.map(|c| -c))
    }
}

impl Mul<f64> for MinkVector {
    type Output = MinkVector;
    fn mul(self, s: f64) -> MinkVector {
        MinkVector(self.0.map(|c| c * s))
    }
}

impl Mul<MinkVector> for f64 {
    type Output = MinkVector;
    fn mul(self, v: MinkVector) -> MinkVector {
        v * self
    }
}

/// Antisymmetric contravariant rank-2 tensor `M^{ab}`.
///
/// Elements of the Lorentz algebra and angular momenta share this type.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Bivector(pub [[f64; 4]; 4]);

impl Bivector {
    pub const ZERO: Bivector = Bivector([[0.0; 4]; 4]);

    /// `m_{ab} = e_a ∧ e_b`.
    pub fn basis(a: usize, b: usize) -> Self {
        MinkVector::basis(a).wedge(&MinkVector::basis(b))
    }

    /// Build from the six independent components `M^{ab}`, `a < b`, in
    /// the order 01, 02, 03, 12, 13, 23.
    pub fn from_independent(c: [f64; 6]) -> Self {
        let mut m = Bivector::ZERO;
        for (k, (a, b)) in INDEPENDENT_PAIRS.iter().enumerate() {
            m.0[*a][*b] = c[k];
            m.0[*b][*a] = -c[k];
        }
        m
    }

    pub fn independent(&self) -> [f64; 6] {
        std::array::from_fn(|k| {
            let (a, b) = INDEPENDENT_PAIRS[k];
            self.0[a][b]
        })
    }

    /// Largest deviation from exact antisymmetry.
    pub fn antisymmetry_defect(&self) -> f64 {
        let mut d: f64 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                d = d.max((self.0[a][b] + self.0[b][a]).abs());
            }
        }
        d
    }

    /// Right contraction `(M·v)^a = M^{ab} η_{bc} v^c`.
    pub fn dot(&self, v: &MinkVector) -> MinkVector {
        MinkVector(std::array::from_fn(|a| {
            (0..4).map(|b| self.0[a][b] * ETA[b] * v.0[b]).sum()
        }))
    }

    /// Left contraction `(v·M)^b = v_a M^{ab}`.
    pub fn left_dot(&self, v: &MinkVector) -> MinkVector {
        MinkVector(std::array::from_fn(|b| {
            (0..4).map(|a| v.0[a] * ETA[a] * self.0[a][b]).sum()
        }))
    }

    /// Mixed endomorphism `M^a_b = M^{ac} η_{cb}`.
    pub fn endomorphism(&self) -> Matrix4<f64> {
        Matrix4::from_fn(|a, b| self.0[a][b] * ETA[b])
    }

    /// Inverse of [`Bivector::endomorphism`]; no antisymmetry check.
    pub fn from_endomorphism(m: &Matrix4<f64>) -> Self {
        Bivector(std::array::from_fn(|a| std::array::from_fn(|b| m[(a, b)] * ETA[b])))
    }

    pub fn to_matrix(&self) -> Matrix4<f64> {
        Matrix4::from_fn(|a, b| self.0[a][b])
    }

    pub fn from_matrix(m: &Matrix4<f64>) -> Self {
        Bivector(std::array::from_fn(|a| std::array::from_fn(|b| m[(a, b)])))
    }

    /// `L ⊗ L` acting on both slots: `L M Lᵀ`.
    pub fn transform(&self, l: &Matrix4<f64>) -> Self {
        Self::from_matrix(&(l * self.to_matrix() * l.transpose()))
    }

    /// Full contraction `½ η_{ac} η_{bd} M^{ab} N^{cd}`.
    pub fn contract(&self, other: &Bivector) -> f64 {
        let mut s = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                s += ETA[a] * ETA[b] * self.0[a][b] * other.0[a][b];
            }
        }
        0.5 * s
    }

    /// `sqrt(|⟨M, M⟩_norm|)`.
    pub fn norm(&self) -> f64 {
        self.contract(self).abs().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0, |m: f64, c| m.max(c.abs()))
    }

    /// Commutator of the mixed endomorphisms, returned as a bivector.
    pub fn commutator(&self, other: &Bivector) -> Bivector {
        let a = self.endomorphism();
        let b = other.endomorphism();
        Bivector::from_endomorphism(&(a * b - b * a))
    }
}

/// Index pairs `(a, b)` with `a < b`, in storage order.
pub const INDEPENDENT_PAIRS: [(usize, usize); 6] =
    [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

impl Add for Bivector {
    type Output = Bivector;
    fn add(self, rhs: Bivector) -> Bivector {
        Bivector(std::array::from_fn(|a| {
            std::array::from_fn(|b| self.0[a][b] + rhs.0[a][b])
        }))
    }
}

impl AddAssign for Bivector {
    fn add_assign(&mut self, rhs: Bivector) {
        *self = *self + rhs;
    }
}

impl Sub for Bivector {
    type Output = Bivector;
    fn sub(self, rhs: Bivector) -> Bivector {
        Bivector(std::array::from_fn(|a| {
            std::array::from_fn(|b| self.0[a][b] - rhs.0[a][b])
        }))
    }
}

impl Neg for Bivector {
    type Output = Bivector;
    fn neg(self) -> Bivector {
        Bivector(self.0.map(|r| r.map(|c| -c)))
    }
}

impl Mul<f64> for Bivector {
    type Output = Bivector;
    fn mul(self, s: f64) -> Bivector {
        Bivector(self.0.map(|r| r.map(|c| c * s)))
    }
}

/// Symmetric contravariant rank-2 tensor, e.g. `T^{ab}`.
pub type SymTensor = [[f64; 4]; 4];

/// `T_{ab} v^a w^b` for contravariant `T`.
pub fn tensor_on(t: &SymTensor, v: &MinkVector, w: &MinkVector) -> f64 {
    let vl = v.lower();
    let wl = w.lower();
    let mut s = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            s += t[a][b] * vl.0[a] * wl.0[b];
        }
    }
    s
}

/// `T^a_b w^b = T^{ac} η_{cb} w^b`.
pub fn tensor_dot(t: &SymTensor, w: &MinkVector) -> MinkVector {
    let wl = w.lower();
    MinkVector(std::array::from_fn(|a| (0..4).map(|b| t[a][b] * wl.0[b]).sum()))
}

/// Largest componentwise difference.
pub fn tensor_max_diff(a: &SymTensor, b: &SymTensor) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            d = d.max((a[i][j] - b[i][j]).abs());
        }
    }
    d
}

/// `L T Lᵀ`.
pub fn tensor_transform(t: &SymTensor, l: &Matrix4<f64>) -> SymTensor {
    let m = Matrix4::from_fn(|a, b| t[a][b]);
    let r = l * m * l.transpose();
    std::array::from_fn(|a| std::array::from_fn(|b| r[(a, b)]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_dot_matches_definition() {
        let a = MinkVector::new(0.3, 1.0, -2.0, 0.5);
        let b = MinkVector::new(1.1, 0.2, 0.7, -0.4);
        let c = MinkVector::new(-0.6, 0.9, 0.1, 2.0);
        let lhs = a.wedge(&b).dot(&c);
        let rhs = a * b.dot(&c) - b * a.dot(&c);
        assert!((lhs - rhs).max_abs() < 1e-14);
    }

    #[test]
    fn endomorphism_round_trip() {
        let m = Bivector::from_independent([1.0, 2.0, -3.0, 0.5, 0.25, -1.5]);
        let back = Bivector::from_endomorphism(&m.endomorphism());
        assert_eq!(m, back);
        assert_eq!(m.antisymmetry_defect(), 0.0);
    }

    #[test]
    fn velocity_is_unit_timelike() {
        let u = MinkVector::from_velocity([0.3, -0.4, 0.5]);
        assert!((u.norm_sq() - 1.0).abs() < 1e-14);
        let v = u.velocity();
        assert!((v[1] + 0.4).abs() < 1e-15);
    }

    #[test]
    fn left_and_right_contractions_differ_by_sign() {
        let m = Bivector::from_independent([0.4, -1.0, 2.0, 0.3, 0.7, -0.2]);
        let v = MinkVector::new(1.0, 0.5, -0.25, 2.0);
        assert!((m.dot(&v) + m.left_dot(&v)).max_abs() < 1e-15);
    }
}
