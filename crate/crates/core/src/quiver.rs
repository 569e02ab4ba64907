//! Quivers, the vertex → arrow choice ψ, representation points, group
//! elements of `U_Q`, the action `g.h`, and seeded samplers.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::field::Scalar;
use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

impl Arrow {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

/// A finite directed multigraph; loops and parallel arrows are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver from names; endpoints must be declared vertices and
    /// names must be distinct.
    pub fn new(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self, Error> {
        let decl = QuiverDecl {
            n: 1,
            vertices: vertices.iter().map(|v| v.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string()))
                .collect(),
            psi: Vec::new(),
        };
        let (quiver, diagnostics) = decl.build_quiver();
        match diagnostics.into_iter().next() {
            None => Ok(quiver),
            Some(d) => Err(Error::Precondition(d.to_string())),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a.0].name
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn find_arrow(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name).map(ArrowId)
    }

    pub fn find_vertex(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name).map(VertexId)
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].source
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].target
    }

    pub fn is_loop(&self, a: ArrowId) -> bool {
        self.arrows[a.0].is_loop()
    }

    pub fn is_incident(&self, v: VertexId, a: ArrowId) -> bool {
        let arrow = &self.arrows[a.0];
        arrow.source == v || arrow.target == v
    }
}

/// `ψ : V → A`, every image incident to its vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiChoice {
    images: Vec<ArrowId>,
}

impl PsiChoice {
    pub fn of(&self, v: VertexId) -> ArrowId {
        self.images[v.0]
    }

    pub fn in_image(&self, a: ArrowId) -> bool {
        self.images.contains(&a)
    }
}

/// Stable diagnostic codes, shared with the command-line front end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagnosticCode {
    UnknownVertex,
    PsiNotIncident,
    MissingPsi,
    IsolatedVertex,
    Duplicate,
    UnknownArrow,
    BadDimension,
}

impl DiagnosticCode {
    pub fn code(self) -> &'static str {
        match self {
            DiagnosticCode::UnknownVertex => "E001",
            DiagnosticCode::PsiNotIncident => "E002",
            DiagnosticCode::MissingPsi => "E003",
            DiagnosticCode::IsolatedVertex => "E004",
            DiagnosticCode::Duplicate => "E006",
            DiagnosticCode::UnknownArrow => "E007",
            DiagnosticCode::BadDimension => "E008",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: DiagnosticCode,
    pub message: String,
}

impl Diagnostic {
    fn new(code: DiagnosticCode, message: String) -> Self {
        Self { code, message }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.code.code(), self.message)
    }
}

/// Unvalidated declarations, as read from a quiver file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QuiverDecl {
    pub n: usize,
    pub vertices: Vec<String>,
    /// `(name, source, target)`.
    pub arrows: Vec<(String, String, String)>,
    /// `(vertex, arrow)`.
    pub psi: Vec<(String, String)>,
}

/// A validated quiver, ψ-choice and common dimension `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    pub quiver: Quiver,
    pub psi: PsiChoice,
    pub n: usize,
}

impl QuiverDecl {
    fn build_quiver(&self) -> (Quiver, Vec<Diagnostic>) {
        let mut diagnostics = Vec::new();
        let mut vertices: Vec<String> = Vec::new();
        for v in &self.vertices {
            if vertices.contains(v) {
                diagnostics.push(Diagnostic::new(
                    DiagnosticCode::Duplicate,
                    format!("vertex {v}: declared more than once"),
                ));
            } else {
                vertices.push(v.clone());
            }
        }
        let mut arrows: Vec<Arrow> = Vec::new();
        for (name, s, t) in &self.arrows {
            if arrows.iter().any(|a| &a.name == name) {
                diagnostics.push(Diagnostic::new(
                    DiagnosticCode::Duplicate,
                    format!("arrow {name}: declared more than once"),
                ));
                continue;
            }
            let mut endpoint = |label: &str| match vertices.iter().position(|v| v == label) {
                Some(i) => Some(VertexId(i)),
                None => {
                    diagnostics.push(Diagnostic::new(
                        DiagnosticCode::UnknownVertex,
                        format!("arrow {name}: unknown vertex {label}"),
                    ));
                    None
                }
            };
            let (source, target) = (endpoint(s), endpoint(t));
            if let (Some(source), Some(target)) = (source, target) {
                arrows.push(Arrow {
                    name: name.clone(),
                    source,
                    target,
                });
            }
        }
        (Quiver { vertices, arrows }, diagnostics)
    }
}

/// Checks every structural requirement and returns all violations found.
pub fn validate(decl: &QuiverDecl) -> Result<Model, Vec<Diagnostic>> {
    let (quiver, mut diagnostics) = decl.build_quiver();
    if decl.n == 0 {
        diagnostics.push(Diagnostic::new(
            DiagnosticCode::BadDimension,
            "n: dimension must be positive".into(),
        ));
    }
    for v in quiver.vertices() {
        if !quiver.arrow_ids().any(|a| quiver.is_incident(v, a)) {
            diagnostics.push(Diagnostic::new(
                DiagnosticCode::IsolatedVertex,
                format!("vertex {}: vertex has no incident arrow", quiver.vertex_name(v)),
            ));
        }
    }
    let mut images: Vec<Option<ArrowId>> = alloc::vec![None; quiver.vertex_count()];
    for (vname, aname) in &decl.psi {
        let Some(v) = quiver.find_vertex(vname) else {
            diagnostics.push(Diagnostic::new(
                DiagnosticCode::UnknownVertex,
                format!("psi {vname}: unknown vertex {vname}"),
            ));
            continue;
        };
        let Some(a) = quiver.find_arrow(aname) else {
            diagnostics.push(Diagnostic::new(
                DiagnosticCode::UnknownArrow,
                format!("psi {vname}: unknown arrow {aname}"),
            ));
            continue;
        };
        if images[v.0].is_some() {
            diagnostics.push(Diagnostic::new(
                DiagnosticCode::Duplicate,
                format!("vertex {vname}: more than one psi image"),
            ));
            continue;
        }
        if !quiver.is_incident(v, a) {
            diagnostics.push(Diagnostic::new(
                DiagnosticCode::PsiNotIncident,
                format!("vertex {vname}: psi not incident (arrow {aname})"),
            ));
        }
        images[v.0] = Some(a);
    }
    for v in quiver.vertices() {
        if images[v.0].is_none() {
            diagnostics.push(Diagnostic::new(
                DiagnosticCode::MissingPsi,
                format!("vertex {}: missing psi", quiver.vertex_name(v)),
            ));
        }
    }
    if !diagnostics.is_empty() {
        return Err(diagnostics);
    }
    let images = images.into_iter().map(|a| a.expect("checked above")).collect();
    Ok(Model {
        quiver,
        psi: PsiChoice { images },
        n: decl.n,
    })
}

impl Model {
    /// Convenience constructor from string slices.
    pub fn from_names(
        n: usize,
        vertices: &[&str],
        arrows: &[(&str, &str, &str)],
        psi: &[(&str, &str)],
    ) -> Result<Self, Vec<Diagnostic>> {
        validate(&QuiverDecl {
            n,
            vertices: vertices.iter().map(|v| v.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string()))
                .collect(),
            psi: psi.iter().map(|(v, a)| (v.to_string(), a.to_string())).collect(),
        })
    }
}

/// A point `h = (X_α)` of the representation space, indexed by arrow.
#[derive(Debug, Clone, PartialEq)]
pub struct RepPoint<F> {
    matrices: Vec<Matrix<F>>,
}

impl<F: Scalar> RepPoint<F> {
    /// One `n × n` matrix per arrow, in arrow order.
    pub fn new(quiver: &Quiver, matrices: Vec<Matrix<F>>) -> Result<Self, Error> {
        check_family(quiver.arrow_count(), &matrices)?;
        Ok(Self { matrices })
    }

    pub fn matrix(&self, a: ArrowId) -> &Matrix<F> {
        &self.matrices[a.0]
    }

    pub fn matrix_mut(&mut self, a: ArrowId) -> &mut Matrix<F> {
        &mut self.matrices[a.0]
    }

    pub fn matrices(&self) -> &[Matrix<F>] {
        &self.matrices
    }

    pub fn n(&self) -> usize {
        self.matrices.first().map_or(0, Matrix::n)
    }

    pub fn map<G: Scalar>(&self, mut f: impl FnMut(&F) -> G) -> RepPoint<G> {
        RepPoint {
            matrices: self.matrices.iter().map(|m| m.map(&mut f)).collect(),
        }
    }

    /// Per-arrow transpose; not a `U_Q`-equivariant operation.
    pub fn transpose(&self) -> Self {
        RepPoint {
            matrices: self.matrices.iter().map(Matrix::transpose).collect(),
        }
    }
}

/// `g = (g_v) ∈ U_Q`, indexed by vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement<F> {
    matrices: Vec<Matrix<F>>,
}

impl<F: Scalar> GroupElement<F> {
    /// Each matrix must be upper unitriangular.
    pub fn new(quiver: &Quiver, matrices: Vec<Matrix<F>>) -> Result<Self, Error> {
        check_family(quiver.vertex_count(), &matrices)?;
        if let Some(v) = matrices.iter().position(|m| !m.is_unitriangular()) {
            return Err(Error::NotUnitriangular(quiver.vertex_name(VertexId(v)).into()));
        }
        Ok(Self { matrices })
    }

    /// Skips the unitriangularity check; used for negative controls.
    pub fn new_unchecked(matrices: Vec<Matrix<F>>) -> Self {
        Self { matrices }
    }

    pub fn identity(quiver: &Quiver, n: usize, ctx: &F::Ctx) -> Self {
        Self {
            matrices: (0..quiver.vertex_count()).map(|_| Matrix::identity(n, ctx)).collect(),
        }
    }

    pub fn matrix(&self, v: VertexId) -> &Matrix<F> {
        &self.matrices[v.0]
    }

    pub fn matrices(&self) -> &[Matrix<F>] {
        &self.matrices
    }

    /// Componentwise product `self · other`.
    pub fn compose(&self, other: &Self) -> Result<Self, Error> {
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| a.mul(b))
            .collect::<Result<_, _>>()?;
        Ok(Self { matrices })
    }

    pub fn inverse(&self) -> Result<Self, Error> {
        let matrices = self
            .matrices
            .iter()
            .map(Matrix::unitriangular_inverse)
            .collect::<Result<_, _>>()?;
        Ok(Self { matrices })
    }
}

fn check_family<F: Scalar>(expected: usize, matrices: &[Matrix<F>]) -> Result<(), Error> {
    if matrices.len() != expected {
        return Err(Error::SizeMismatch(format!(
            "expected {expected} matrices, got {}",
            matrices.len()
        )));
    }
    if let Some(first) = matrices.first() {
        let (n, ctx) = (first.n(), first.ctx());
        for m in matrices {
            if m.n() != n {
                return Err(Error::SizeMismatch(format!("mixed sizes {n} and {}", m.n())));
            }
            if m.ctx() != ctx {
                return Err(Error::FieldMismatch);
            }
        }
    }
    Ok(())
}

/// `g.h = (g_t(α) X_α g_s(α)⁻¹)`.
///
/// The inverse is taken by back-substitution, so `g` must be unitriangular
/// unless `inverse` is supplied by the caller through [`act_with_inverse`].
pub fn act<F: Scalar>(quiver: &Quiver, g: &GroupElement<F>, h: &RepPoint<F>) -> Result<RepPoint<F>, Error> {
    let inv = g.inverse()?;
    act_with_inverse(quiver, g, &inv, h)
}

pub fn act_with_inverse<F: Scalar>(
    quiver: &Quiver,
    g: &GroupElement<F>,
    g_inv: &GroupElement<F>,
    h: &RepPoint<F>,
) -> Result<RepPoint<F>, Error> {
    if g.matrices.len() != quiver.vertex_count() || h.matrices.len() != quiver.arrow_count() {
        return Err(Error::SizeMismatch(
            "group element or point does not match quiver".into(),
        ));
    }
    let matrices = quiver
        .arrow_ids()
        .map(|a| {
            g.matrix(quiver.target(a))
                .mul(h.matrix(a))?
                .mul(g_inv.matrix(quiver.source(a)))
        })
        .collect::<Result<_, _>>()?;
    Ok(RepPoint { matrices })
}

/// Retry budget of [`sample_omega_point`].
pub const OMEGA_RETRIES: usize = 100;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_unitriangular<F: Scalar, R: Rng + ?Sized>(n: usize, ctx: &F::Ctx, rng: &mut R) -> Matrix<F> {
    Matrix::from_fn(n, |i, j| {
        if i == j {
            F::one(ctx)
        } else if i < j {
            F::random(ctx, rng)
        } else {
            F::zero(ctx)
        }
    })
}

pub fn random_matrix<F: Scalar, R: Rng + ?Sized>(n: usize, ctx: &F::Ctx, rng: &mut R) -> Matrix<F> {
    Matrix::from_fn(n, |_, _| F::random(ctx, rng))
}

pub fn sample_group_with<F: Scalar, R: Rng + ?Sized>(
    quiver: &Quiver,
    n: usize,
    ctx: &F::Ctx,
    rng: &mut R,
) -> GroupElement<F> {
    GroupElement {
        matrices: quiver.vertices().map(|_| random_unitriangular(n, ctx, rng)).collect(),
    }
}

pub fn sample_point_with<F: Scalar, R: Rng + ?Sized>(
    quiver: &Quiver,
    n: usize,
    ctx: &F::Ctx,
    rng: &mut R,
) -> RepPoint<F> {
    RepPoint {
        matrices: quiver.arrow_ids().map(|_| random_matrix(n, ctx, rng)).collect(),
    }
}

/// First `(arrow, k)` with `D_k(X_α) = 0`, if any.
pub fn omega_violation<F: Scalar>(quiver: &Quiver, h: &RepPoint<F>) -> Option<(ArrowId, usize)> {
    quiver.arrow_ids().find_map(|a| {
        let x = h.matrix(a);
        (1..=x.n())
            .find(|&k| x.corner_minor(k).expect("k in range").is_zero())
            .map(|k| (a, k))
    })
}

pub fn sample_omega_point_with<F: Scalar, R: Rng + ?Sized>(
    quiver: &Quiver,
    n: usize,
    ctx: &F::Ctx,
    rng: &mut R,
) -> Result<RepPoint<F>, Error> {
    for _ in 0..OMEGA_RETRIES {
        let h = sample_point_with(quiver, n, ctx, rng);
        if omega_violation(quiver, &h).is_none() {
            return Ok(h);
        }
    }
    Err(Error::OmegaSamplingFailed(OMEGA_RETRIES))
}

pub fn sample_group<F: Scalar>(quiver: &Quiver, n: usize, ctx: &F::Ctx, seed: u64) -> GroupElement<F> {
    sample_group_with(quiver, n, ctx, &mut rng_from_seed(seed))
}

pub fn sample_point<F: Scalar>(quiver: &Quiver, n: usize, ctx: &F::Ctx, seed: u64) -> RepPoint<F> {
    sample_point_with(quiver, n, ctx, &mut rng_from_seed(seed))
}

pub fn sample_omega_point<F: Scalar>(quiver: &Quiver, n: usize, ctx: &F::Ctx, seed: u64) -> Result<RepPoint<F>, Error> {
    sample_omega_point_with(quiver, n, ctx, &mut rng_from_seed(seed))
}
