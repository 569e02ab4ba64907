//! The section `S = ⊕ S_α` determined by ψ.
//!
//! For an arrow between distinct vertices:
//!
//! | condition                      | `S_α`    |
//! |--------------------------------|----------|
//! | α ∉ Im ψ                       | `Mat(n)` |
//! | α = ψ(t(α)) ≠ ψ(s(α))          | `S⁻`     |
//! | α = ψ(s(α)) ≠ ψ(t(α))          | `S⁺`     |
//! | α = ψ(t(α)) = ψ(s(α))          | `Λ`      |
//!
//! A loop at `q` gets `S⁻` when α = ψ(q) and `Mat(n)` otherwise.

use alloc::vec::Vec;

use crate::error::Error;
use crate::field::Scalar;
use crate::matrix::{IndexPair, Shape};
use crate::quiver::{ArrowId, Model, PsiChoice, Quiver, RepPoint};

pub fn shape_of(arrow: ArrowId, quiver: &Quiver, psi: &PsiChoice) -> Result<Shape, Error> {
    if arrow.0 >= quiver.arrow_count() {
        return Err(Error::UnknownArrow(alloc::format!("#{}", arrow.0)));
    }
    let s = quiver.source(arrow);
    let t = quiver.target(arrow);
    if s == t {
        return Ok(if psi.of(s) == arrow {
            Shape::LowerAnti
        } else {
            Shape::Full
        });
    }
    Ok(match (psi.of(t) == arrow, psi.of(s) == arrow) {
        (false, false) => Shape::Full,
        (true, false) => Shape::LowerAnti,
        (false, true) => Shape::UpperAnti,
        (true, true) => Shape::AntiDiag,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionSpec {
    n: usize,
    shapes: Vec<Shape>,
}

impl SectionSpec {
    pub fn new(model: &Model) -> Self {
        let shapes = model
            .quiver
            .arrow_ids()
            .map(|a| shape_of(a, &model.quiver, &model.psi).expect("arrow from quiver"))
            .collect();
        Self { n: model.n, shapes }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn shape(&self, a: ArrowId) -> Shape {
        self.shapes[a.0]
    }

    pub fn shapes(&self) -> &[Shape] {
        &self.shapes
    }

    pub fn dim(&self, a: ArrowId) -> usize {
        self.shapes[a.0].dim(self.n)
    }

    pub fn total_dim(&self) -> usize {
        self.shapes.iter().map(|s| s.dim(self.n)).sum()
    }

    /// Coordinates of `S_α`, ascending in the `≺` order.
    pub fn free_coordinates(&self, a: ArrowId) -> Vec<IndexPair> {
        free_coordinates(self.shapes[a.0], self.n)
    }

    /// `h ∈ S`.
    pub fn contains<F: Scalar>(&self, h: &RepPoint<F>) -> bool {
        self.shapes
            .iter()
            .zip(h.matrices())
            .all(|(&shape, x)| x.is_member(shape))
    }
}

pub fn free_coordinates(shape: Shape, n: usize) -> Vec<IndexPair> {
    let mut coords: Vec<IndexPair> = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| IndexPair::new(i, j)))
        .filter(|p| shape.allows(n, p.row, p.col))
        .collect();
    coords.sort_by(IndexPair::prec_cmp);
    coords
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, PrimeField, Rationals};
    use crate::matrix::Matrix;
    use crate::quiver::sample_point;
    use alloc::vec;

    fn four_vertex(n: usize) -> Model {
        Model::from_names(
            n,
            &["1", "2", "3", "4"],
            &[("a1", "1", "1"), ("a2", "2", "1"), ("a3", "3", "2"), ("a4", "2", "4")],
            &[("1", "a1"), ("2", "a4"), ("3", "a3"), ("4", "a4")],
        )
        .unwrap()
    }

    #[test]
    fn four_vertex_shapes() {
        let spec = SectionSpec::new(&four_vertex(3));
        assert_eq!(
            spec.shapes(),
            &[Shape::LowerAnti, Shape::Full, Shape::UpperAnti, Shape::AntiDiag]
        );
        assert_eq!(SectionSpec::new(&four_vertex(2)).total_dim(), 3 + 4 + 3 + 2);
        assert_eq!(spec.total_dim(), 24);
    }

    #[test]
    fn loops_and_unchosen_arrows() {
        let m = Model::from_names(2, &["q"], &[("a", "q", "q"), ("b", "q", "q")], &[("q", "b")]).unwrap();
        let spec = SectionSpec::new(&m);
        assert_eq!(spec.shapes(), &[Shape::Full, Shape::LowerAnti]);
        assert_eq!(spec.total_dim(), 7);
        assert!(shape_of(ArrowId(5), &m.quiver, &m.psi).is_err());
    }

    #[test]
    fn free_coordinate_lists() {
        let p = IndexPair::new;
        assert_eq!(free_coordinates(Shape::AntiDiag, 3), vec![p(3, 1), p(2, 2), p(1, 3)]);
        assert_eq!(free_coordinates(Shape::LowerAnti, 2), vec![p(2, 1), p(2, 2), p(1, 2)]);
        assert_eq!(free_coordinates(Shape::UpperAnti, 2), vec![p(2, 1), p(1, 1), p(1, 2)]);
        for n in 1..=5 {
            for shape in [Shape::Full, Shape::LowerAnti, Shape::UpperAnti, Shape::AntiDiag] {
                assert_eq!(free_coordinates(shape, n).len(), shape.dim(n));
            }
        }
    }

    #[test]
    fn membership() {
        let m = four_vertex(3);
        let spec = SectionSpec::new(&m);
        let j: RepPoint<crate::field::Rational> = RepPoint::new(
            &m.quiver,
            (0..4).map(|_| Matrix::anti_identity(3, &Rationals)).collect(),
        )
        .unwrap();
        assert!(spec.contains(&j));
        let f = PrimeField::default();
        let h: RepPoint<Fp> = sample_point(&m.quiver, 3, &f, 0);
        assert!(!spec.contains(&h));
    }

    #[test]
    fn shapes_ignore_names_of_unchosen_arrows() {
        let a = four_vertex(2);
        let b = Model::from_names(
            2,
            &["1", "2", "3", "4"],
            &[
                ("a1", "1", "1"),
                ("renamed", "2", "1"),
                ("a3", "3", "2"),
                ("a4", "2", "4"),
            ],
            &[("1", "a1"), ("2", "a4"), ("3", "a3"), ("4", "a4")],
        )
        .unwrap();
        assert_eq!(SectionSpec::new(&a), SectionSpec::new(&b));
    }
}
