//! The Poincaré group and its Lie algebra relative to a chosen origin:
//! composition, the `GL(5)` embedding, adjoint and co-adjoint
//! representations, the natural pairing, the exponential map, and the
//! fundamental (Killing) vector fields of the action on spacetime.
//!
//! Group elements `(a, L)` act as `x ↦ o + a + L(x − o)`. Algebra elements
//! `(v, M)` store `M` as a bivector `M^{ab}`; the endomorphism acting on
//! vectors is `M^a_b = M^{ac} η_cb`.

use crate::affine::Event;
use crate::error::{Error, Result};
use crate::minkowski::{eta_matrix, Bivector, Covector, MinkVector};
use nalgebra::{Matrix4, Matrix5};

/// A 4×4 matrix satisfying `η_ab L^a_c L^b_d = η_cd`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzMatrix(Matrix4<f64>);

impl LorentzMatrix {
    /// Accepts any solution of the quadratic condition, including parity and
    /// time reversal. The residual is measured relative to `max(1, |L|²)`
    /// so large boosts are not rejected for rounding alone.
    pub fn new(m: Matrix4<f64>) -> Result<Self> {
        let defect = lorentz_defect(&m);
        let scale = m.amax().max(1.0).powi(2);
        if !(defect <= 1e-10 * scale) {
            return Err(Error::Invariant(format!(
                "Lorentz condition η(Lx, Ly) = η(x, y) fails by {defect:e}"
            )));
        }
        Ok(LorentzMatrix(m))
    }

    pub fn new_unchecked(m: Matrix4<f64>) -> Self {
        LorentzMatrix(m)
    }

    pub fn identity() -> Self {
        LorentzMatrix(Matrix4::identity())
    }

    /// Pure boost with the given rapidity along a spatial direction.
    pub fn boost(rapidity: f64, direction: [f64; 3]) -> Self {
        let len = direction.iter().map(|c| c * c).sum::<f64>().sqrt();
        if len == 0.0 || rapidity == 0.0 {
            return Self::identity();
        }
        let n = direction.map(|c| c / len);
        let (ch, sh) = (rapidity.cosh(), rapidity.sinh());
        let mut m = Matrix4::identity();
        m[(0, 0)] = ch;
        for i in 0..3 {
            m[(0, i + 1)] = sh * n[i];
            m[(i + 1, 0)] = sh * n[i];
            for j in 0..3 {
                m[(i + 1, j + 1)] += (ch - 1.0) * n[i] * n[j];
            }
        }
        LorentzMatrix(m)
    }

    /// Boost taking `e_0` to the unit timelike vector `u`.
    pub fn boost_to(u: &MinkVector) -> Self {
        let v = u.velocity();
        let speed = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if speed == 0.0 {
            return Self::identity();
        }
        Self::boost(speed.atanh(), v)
    }

    /// Spatial rotation by `angle` about `axis` (right-handed).
    pub fn rotation(axis: [f64; 3], angle: f64) -> Self {
        let len = axis.iter().map(|c| c * c).sum::<f64>().sqrt();
        if len == 0.0 {
            return Self::identity();
        }
        let k = axis.map(|c| c / len);
        let (s, c) = angle.sin_cos();
        let mut m = Matrix4::identity();
        let cross = [[0.0, -k[2], k[1]], [k[2], 0.0, -k[0]], [-k[1], k[0], 0.0]];
        for i in 0..3 {
            for j in 0..3 {
                let delta = if i == j { 1.0 } else { 0.0 };
                m[(i + 1, j + 1)] = c * delta + s * cross[i][j] + (1.0 - c) * k[i] * k[j];
            }
        }
        LorentzMatrix(m)
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn apply(&self, v: &MinkVector) -> MinkVector {
        v.transform(&self.0)
    }

    /// `L⁻¹ = η Lᵀ η`.
    pub fn inverse(&self) -> Self {
        let eta = eta_matrix();
        LorentzMatrix(eta * self.0.transpose() * eta)
    }

    pub fn compose(&self, other: &LorentzMatrix) -> Self {
        LorentzMatrix(self.0 * other.0)
    }

    pub fn defect(&self) -> f64 {
        lorentz_defect(&self.0)
    }
}

/// `max |Lᵀ η L − η|`.
pub fn lorentz_defect(m: &Matrix4<f64>) -> f64 {
    let eta = eta_matrix();
    (m.transpose() * eta * m - eta).amax()
}

/// A Poincaré transformation `(a, L)` relative to an origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoincareElement {
    a: MinkVector,
    l: LorentzMatrix,
}

impl PoincareElement {
    pub fn new(a: MinkVector, l: LorentzMatrix) -> Self {
        PoincareElement { a, l }
    }

    pub fn identity() -> Self {
        Self::new(MinkVector::ZERO, LorentzMatrix::identity())
    }

    pub fn translation(a: MinkVector) -> Self {
        Self::new(a, LorentzMatrix::identity())
    }

    pub fn lorentz_only(l: LorentzMatrix) -> Self {
        Self::new(MinkVector::ZERO, l)
    }

    pub fn translation_part(&self) -> MinkVector {
        self.a
    }

    pub fn lorentz(&self) -> &LorentzMatrix {
        &self.l
    }

    /// `(a2, L2)∘(a1, L1) = (a2 + L2 a1, L2 L1)`: apply `self` after `first`.
    pub fn compose(&self, first: &PoincareElement) -> Self {
        Self::new(self.a + self.l.apply(&first.a), self.l.compose(&first.l))
    }

    /// `(a, L)⁻¹ = (−L⁻¹ a, L⁻¹)`.
    pub fn inverse(&self) -> Self {
        let inv = self.l.inverse();
        Self::new(-inv.apply(&self.a), inv)
    }

    /// `[[1, 0], [a, L]]`.
    pub fn embed_gl5(&self) -> Matrix5<f64> {
        let mut m = Matrix5::zeros();
        m[(0, 0)] = 1.0;
        for i in 0..4 {
            m[(i + 1, 0)] = self.a.0[i];
            for j in 0..4 {
                m[(i + 1, j + 1)] = self.l.0[(i, j)];
            }
        }
        m
    }

    pub fn from_gl5(m: &Matrix5<f64>) -> Result<Self> {
        if (m[(0, 0)] - 1.0).abs() > 1e-12 || (1..5).any(|j| m[(0, j)].abs() > 1e-12) {
            return Err(Error::Invariant("matrix is not in the affine block form".into()));
        }
        let a = MinkVector(std::array::from_fn(|i| m[(i + 1, 0)]));
        let l = LorentzMatrix::new(Matrix4::from_fn(|i, j| m[(i + 1, j + 1)]))?;
        Ok(Self::new(a, l))
    }

    /// `x ↦ o + a + L(x − o)`.
    pub fn act_on_point(&self, x: Event, o: Event) -> Event {
        o + self.a + self.l.apply(&(x - o))
    }

    /// The same map expressed relative to a different origin `o'`, i.e.
    /// conjugation by the translation `o → o'`.
    pub fn rebase(&self, o: Event, o_new: Event) -> Self {
        let d = o - o_new;
        Self::new(self.a + d - self.l.apply(&d), self.l)
    }

    pub fn max_abs_diff(&self, other: &PoincareElement) -> f64 {
        (self.embed_gl5() - other.embed_gl5()).amax()
    }
}

/// An element `(v, M)` of the Poincaré algebra.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AlgebraElement {
    pub v: MinkVector,
    pub m: Bivector,
}

impl AlgebraElement {
    /// Requires `M^{ab} = −M^{ba}` exactly.
    pub fn new(v: MinkVector, m: Bivector) -> Result<Self> {
        if m.antisymmetry_defect() != 0.0 {
            return Err(Error::Invariant("Lorentz generator must be antisymmetric".into()));
        }
        Ok(AlgebraElement { v, m })
    }

    /// Skips the antisymmetry check; used to build negative controls.
    pub fn from_raw(v: MinkVector, m: Bivector) -> Self {
        AlgebraElement { v, m }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// Translation generator `e_a`.
    pub fn translation(a: usize) -> Self {
        AlgebraElement { v: MinkVector::basis(a), m: Bivector::ZERO }
    }

    /// Lorentz generator `m_ab = e_a ∧ e_b`.
    pub fn lorentz(a: usize, b: usize) -> Self {
        AlgebraElement { v: MinkVector::ZERO, m: Bivector::basis(a, b) }
    }

    pub fn scale(&self, s: f64) -> Self {
        AlgebraElement { v: self.v * s, m: self.m * s }
    }

    pub fn add(&self, other: &AlgebraElement) -> Self {
        AlgebraElement { v: self.v + other.v, m: self.m + other.m }
    }

    /// `[(v, M), (w, N)] = (Mw − Nv, [M, N])`.
    pub fn bracket(&self, other: &AlgebraElement) -> Self {
        AlgebraElement {
            v: self.m.dot(&other.v) - other.m.dot(&self.v),
            m: self.m.commutator(&other.m),
        }
    }

    /// `[[0, 0], [v, M]]` with `M` as the mixed endomorphism.
    pub fn embed_gl5(&self) -> Matrix5<f64> {
        let mut out = Matrix5::zeros();
        let endo = self.m.endomorphism();
        for i in 0..4 {
            out[(i + 1, 0)] = self.v.0[i];
            for j in 0..4 {
                out[(i + 1, j + 1)] = endo[(i, j)];
            }
        }
        out
    }

    pub fn from_gl5(m: &Matrix5<f64>) -> Self {
        let v = MinkVector(std::array::from_fn(|i| m[(i + 1, 0)]));
        let endo = Matrix4::from_fn(|i, j| m[(i + 1, j + 1)]);
        AlgebraElement { v, m: Bivector::from_endomorphism(&endo) }
    }

    pub fn max_abs(&self) -> f64 {
        self.v.max_abs().max(self.m.max_abs())
    }

    pub fn max_abs_diff(&self, other: &AlgebraElement) -> f64 {
        (self.v - other.v).max_abs().max((self.m - other.m).max_abs())
    }
}

/// An element `(p, J)` of the dual of the Poincaré algebra.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualElement {
    pub p: Covector,
    pub j: Bivector,
}

impl DualElement {
    pub fn new(p: Covector, j: Bivector) -> Result<Self> {
        if j.antisymmetry_defect() > 0.0 {
            return Err(Error::Invariant("dual Lorentz component must be antisymmetric".into()));
        }
        Ok(DualElement { p, j })
    }

    pub fn max_abs(&self) -> f64 {
        self.p.raise().max_abs().max(self.j.max_abs())
    }

    pub fn max_abs_diff(&self, other: &DualElement) -> f64 {
        (self.p.raise() - other.p.raise()).max_abs().max((self.j - other.j).max_abs())
    }
}

/// `Ad_(a,L)(v, M) = (Lv − (L M Lᵀ)·a, L M Lᵀ)`.
pub fn adjoint(g: &PoincareElement, x: &AlgebraElement) -> AlgebraElement {
    let m = x.m.transform(&g.l.0);
    AlgebraElement { v: g.l.apply(&x.v) - m.dot(&g.a), m }
}

/// `Ad*_(a,L)(p, J) = (Lp, L J Lᵀ − a ∧ Lp)`, the inverse transpose of
/// [`adjoint`] under [`pairing`].
pub fn coadjoint(g: &PoincareElement, d: &DualElement) -> DualElement {
    let lp = g.l.apply(&d.p.raise());
    DualElement { p: lp.lower(), j: d.j.transform(&g.l.0) - g.a.wedge(&lp) }
}

/// `⟨(p, J), (v, M)⟩ = p(v) + ½ η_ac η_bd J^{ab} M^{cd}`.
pub fn pairing(d: &DualElement, x: &AlgebraElement) -> f64 {
    d.p.apply(&x.v) + d.j.contract(&x.m)
}

/// Split an endomorphism into its η-symmetric and η-antisymmetric parts.
pub fn project_symmetric_antisymmetric(e: &Matrix4<f64>) -> (Matrix4<f64>, Matrix4<f64>) {
    let eta = eta_matrix();
    let adj = eta * e.transpose() * eta;
    ((e + adj) * 0.5, (e - adj) * 0.5)
}

/// `exp(tX)` through scaling and squaring of a Taylor series on the
/// `GL(5)` embedding.
pub fn exp_algebra(x: &AlgebraElement, t: f64) -> Result<PoincareElement> {
    let a = x.embed_gl5() * t;
    PoincareElement::from_gl5(&expm(&a))
}

/// Matrix exponential of a 5×5 matrix. The scaled matrix has 1-norm at
/// most 1/2, where 18 Taylor terms leave a truncation below `1e-19`.
pub fn expm(a: &Matrix5<f64>) -> Matrix5<f64> {
    let norm = (0..5)
        .map(|j| (0..5).map(|i| a[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let b = a / 2f64.powi(squarings);
    let mut result = Matrix5::identity();
    let mut term = Matrix5::identity();
    for k in 1..=18 {
        term = term * b / k as f64;
        result += term;
        if term.amax() < 1e-18 * result.amax() {
            break;
        }
    }
    for _ in 0..squarings {
        result = result * result;
    }
    result
}

/// `V^X(x) = v + M·(x − o)`, the generator of `t ↦ exp(tX)·x`.
pub fn fundamental_field(x: &AlgebraElement, o: Event, at: Event) -> MinkVector {
    x.v + x.m.dot(&(at - o))
}

/// `∂_b (V^X)^a`, constant because the field is affine.
pub fn field_jacobian(x: &AlgebraElement) -> Matrix4<f64> {
    x.m.endomorphism()
}

/// Commutator of vector fields `[V^X, V^Y] = (V^X·∇) V^Y − (V^Y·∇) V^X`
/// from the analytic Jacobians.
pub fn field_commutator(x: &AlgebraElement, y: &AlgebraElement, o: Event, at: Event) -> MinkVector {
    let vx = fundamental_field(x, o, at);
    let vy = fundamental_field(y, o, at);
    vx.transform(&field_jacobian(y)) - vy.transform(&field_jacobian(x))
}

/// `t ↦ exp(tX)·x`, the flow of `V^X`.
pub fn flow(x: &AlgebraElement, t: f64, o: Event, at: Event) -> Result<Event> {
    Ok(exp_algebra(x, t)?.act_on_point(at, o))
}

/// Whether `V^X` is a Killing field, i.e. whether the η-symmetric part of
/// the generator vanishes.
pub fn killing_check(x: &AlgebraElement) -> bool {
    let (sym, _) = project_symmetric_antisymmetric(&x.m.endomorphism());
    sym.amax() <= 1e-12 * x.m.max_abs().max(1.0)
}

/// `max |∂_a V_b + ∂_b V_a|` by central differences.
pub fn killing_residual_fd(x: &AlgebraElement, o: Event, at: Event, h: f64) -> f64 {
    let mut grad = [[0.0; 4]; 4];
    for (a, row) in grad.iter_mut().enumerate() {
        let mut step = [0.0; 4];
        step[a] = h;
        let plus = fundamental_field(x, o, at + MinkVector(step)).lower();
        let minus = fundamental_field(x, o, at - MinkVector(step)).lower();
        for b in 0..4 {
            row[b] = (plus.0[b] - minus.0[b]) / (2.0 * h);
        }
    }
    let mut worst: f64 = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            worst = worst.max((grad[a][b] + grad[b][a]).abs());
        }
    }
    worst
}

/// `|[V^X, V^Y] + V^{[X,Y]}|` at a sample point.
pub fn field_commutator_check(x: &AlgebraElement, y: &AlgebraElement, o: Event, sample: Event) -> f64 {
    let lhs = field_commutator(x, y, o, sample);
    let rhs = fundamental_field(&x.bracket(y), o, sample);
    (lhs + rhs).max_abs()
}

/// `|L·V^X(s) − V^{Ad_g X}(g·s)|`.
pub fn pushforward_equivariance_check(
    g: &PoincareElement,
    x: &AlgebraElement,
    o: Event,
    sample: Event,
) -> f64 {
    let pushed = g.lorentz().apply(&fundamental_field(x, o, sample));
    let moved = fundamental_field(&adjoint(g, x), o, g.act_on_point(sample, o));
    (pushed - moved).max_abs()
}
