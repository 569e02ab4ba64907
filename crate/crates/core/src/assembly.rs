//! Assembly of the generator system `⋃_α (P_α ⊔ D_α)`.
//!
//! Each arrow contributes its `n` corner minors, a source-side family chosen
//! by `β = ψ(s(α))` and a target-side family chosen by `γ = ψ(t(α))`:
//!
//! * Case 1, β ends at `s(α)` (loops included): `P(X_α, X_β)`.
//! * Case 2, β leaves `s(α)` and is not a loop: `R⁻(X_α, X_β)`.
//! * Case 3, γ leaves `t(α)` and is not a loop: `P(X_γ, X_α)`.
//! * Case 4, γ ends at `t(α)` (loops included): `R⁺(X_γ, X_α)`.
//!
//! The source side is empty when a non-loop α is ψ(s(α)); the target side is
//! empty when α = ψ(t(α)). A ψ-chosen loop pairs with itself in Case 1.

use alloc::vec::Vec;

use crate::invariants::{GeneratorDescriptor, GeneratorKind, LeadingCoordinate, Side};
use crate::matrix::IndexPair;
use crate::quiver::{ArrowId, Model, PsiChoice, Quiver};
use crate::section::SectionSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SourceCase {
    Case1 { beta: ArrowId },
    Case2 { beta: ArrowId },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TargetCase {
    Case3 { gamma: ArrowId },
    Case4 { gamma: ArrowId },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CaseTag {
    pub source: Option<SourceCase>,
    pub target: Option<TargetCase>,
}

/// How target-side systems are assigned to loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum LoopMode {
    /// Loops never get a target-side family.
    Paper,
    /// Loops outside Im ψ get the target family chosen by `ψ(q)`, so the
    /// system covers every section coordinate.
    #[default]
    Extended,
}

impl LoopMode {
    pub fn as_str(self) -> &'static str {
        match self {
            LoopMode::Paper => "paper",
            LoopMode::Extended => "extended",
        }
    }
}

pub fn classify(arrow: ArrowId, quiver: &Quiver, psi: &PsiChoice) -> CaseTag {
    let s = quiver.source(arrow);
    let t = quiver.target(arrow);
    let beta = psi.of(s);
    let source = if beta == arrow && !quiver.is_loop(arrow) {
        None
    } else if quiver.target(beta) == s {
        Some(SourceCase::Case1 { beta })
    } else {
        Some(SourceCase::Case2 { beta })
    };
    let gamma = psi.of(t);
    let target = if gamma == arrow {
        None
    } else if quiver.target(gamma) == t {
        Some(TargetCase::Case4 { gamma })
    } else {
        Some(TargetCase::Case3 { gamma })
    };
    CaseTag { source, target }
}

fn below_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n)
        .flat_map(move |i| (1..=n).map(move |k| (i, k)))
        .filter(move |&(i, k)| n + 1 - i < k)
}

fn above_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n)
        .flat_map(move |i| (1..=n).map(move |k| (i, k)))
        .filter(move |&(i, k)| n + 1 - i > k)
}

fn sort_by_leading(descs: &mut [GeneratorDescriptor]) {
    descs.sort_by(|a, b| a.leading.pos.prec_cmp(&b.leading.pos));
}

pub fn build_source_system(arrow: ArrowId, tag: &CaseTag, n: usize) -> Vec<GeneratorDescriptor> {
    let Some(case) = tag.source else {
        return Vec::new();
    };
    let (kind, beta) = match case {
        SourceCase::Case1 { beta } => (GeneratorKind::P, beta),
        SourceCase::Case2 { beta } => (GeneratorKind::Rminus, beta),
    };
    let mut out: Vec<_> = below_pairs(n)
        .map(|(i, k)| GeneratorDescriptor {
            kind,
            arrows: alloc::vec![arrow, beta],
            i: Some(i),
            k,
            leading: LeadingCoordinate {
                arrow,
                pos: IndexPair::new(i, k),
            },
            side: Side::Source,
        })
        .collect();
    sort_by_leading(&mut out);
    out
}

pub fn build_target_system(
    arrow: ArrowId,
    tag: &CaseTag,
    n: usize,
    is_loop: bool,
    mode: LoopMode,
) -> Vec<GeneratorDescriptor> {
    if is_loop && mode == LoopMode::Paper {
        return Vec::new();
    }
    let mut out: Vec<_> = match tag.target {
        None => Vec::new(),
        Some(TargetCase::Case3 { gamma }) => below_pairs(n)
            .map(|(i, k)| GeneratorDescriptor {
                kind: GeneratorKind::P,
                arrows: alloc::vec![gamma, arrow],
                i: Some(i),
                k,
                leading: LeadingCoordinate {
                    arrow,
                    pos: IndexPair::new(n + 1 - i, n + 1 - k),
                },
                side: Side::Target,
            })
            .collect(),
        Some(TargetCase::Case4 { gamma }) => above_pairs(n)
            .map(|(i, k)| GeneratorDescriptor {
                kind: GeneratorKind::Rplus,
                arrows: alloc::vec![gamma, arrow],
                i: Some(i),
                k,
                leading: LeadingCoordinate {
                    arrow,
                    pos: IndexPair::new(i, k),
                },
                side: Side::Target,
            })
            .collect(),
    };
    sort_by_leading(&mut out);
    out
}

/// The assembled system, in a fixed order: arrows as declared, and within an
/// arrow `D_1..D_n`, then the source family, then the target family, each
/// family ascending in `≺` of its leading coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSystem {
    pub n: usize,
    pub mode: LoopMode,
    pub descriptors: Vec<GeneratorDescriptor>,
}

pub fn build_system(model: &Model, mode: LoopMode) -> GeneratorSystem {
    let n = model.n;
    let quiver = &model.quiver;
    let mut descriptors = Vec::new();
    for arrow in quiver.arrow_ids() {
        let tag = classify(arrow, quiver, &model.psi);
        descriptors.extend((1..=n).map(|k| GeneratorDescriptor::corner(arrow, n, k)));
        descriptors.extend(build_source_system(arrow, &tag, n));
        descriptors.extend(build_target_system(arrow, &tag, n, quiver.is_loop(arrow), mode));
    }
    GeneratorSystem { n, mode, descriptors }
}

/// `Σ_α dim S_α`, the transcendence degree the system has to reach.
pub fn expected_count(model: &Model) -> usize {
    SectionSpec::new(model).total_dim()
}

impl GeneratorSystem {
    pub fn len(&self) -> usize {
        self.descriptors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.descriptors.is_empty()
    }

    pub fn count_for(&self, arrow: ArrowId) -> usize {
        self.descriptors.iter().filter(|d| d.leading.arrow == arrow).count()
    }

    pub fn for_arrow(&self, arrow: ArrowId) -> impl Iterator<Item = &GeneratorDescriptor> {
        self.descriptors.iter().filter(move |d| d.leading.arrow == arrow)
    }

    pub fn leading_is_injective(&self) -> bool {
        let mut seen: Vec<LeadingCoordinate> = Vec::with_capacity(self.descriptors.len());
        for d in &self.descriptors {
            if seen.contains(&d.leading) {
                return false;
            }
            seen.push(d.leading);
        }
        true
    }

    /// Leading coordinates that are not free coordinates of the section, and
    /// section coordinates that no generator leads on.
    pub fn coverage_gaps(&self, section: &SectionSpec) -> (Vec<LeadingCoordinate>, Vec<LeadingCoordinate>) {
        let mut section_coords: Vec<LeadingCoordinate> = Vec::new();
        for (idx, _) in section.shapes().iter().enumerate() {
            let arrow = ArrowId(idx);
            section_coords.extend(
                section
                    .free_coordinates(arrow)
                    .into_iter()
                    .map(|pos| LeadingCoordinate { arrow, pos }),
            );
        }
        let outside = self
            .descriptors
            .iter()
            .map(|d| d.leading)
            .filter(|l| !section_coords.contains(l))
            .collect();
        let uncovered = section_coords
            .into_iter()
            .filter(|c| !self.descriptors.iter().any(|d| d.leading == *c))
            .collect();
        (outside, uncovered)
    }

    /// Injective leading map whose image is exactly the section coordinates.
    pub fn is_bijective_onto(&self, section: &SectionSpec) -> bool {
        let (outside, uncovered) = self.coverage_gaps(section);
        self.leading_is_injective() && outside.is_empty() && uncovered.is_empty()
    }
}
