//! The four invariant families and their evaluation.
//!
//! * `D_k(X)`: lower-left corner minor of order `k′`.
//! * `P_ik(X, Y) = Σ_{i′ ≤ j ≤ k} M_ij(X) N_jk(Y)` for `i′ < k`.
//! * `R⁻_ik(X, Y)`: determinant of the `k × k` stack of the bottom `i′` rows
//!   of `X` over the bottom `k − i′` rows of `Y`, both cut to columns `[1, k]`.
//! * `R⁺_ik(Z, X)`: determinant of the `i′ × i′` block, rows `[i, n]`, whose
//!   first `i′ − k` columns come from `Z` and last `k` columns from `X`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::field::{Dual, Scalar};
use crate::matrix::{IndexPair, Matrix};
use crate::quiver::{ArrowId, Quiver, RepPoint};

fn same_size<F: Scalar>(a: &Matrix<F>, b: &Matrix<F>) -> Result<usize, Error> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(format!("{} against {}", a.n(), b.n())));
    }
    Ok(a.n())
}

fn check_pair(n: usize, i: usize, k: usize) -> Result<usize, Error> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { index: k, n });
    }
    Ok(n + 1 - i)
}

pub fn eval_p<F: Scalar>(x: &Matrix<F>, y: &Matrix<F>, i: usize, k: usize) -> Result<F, Error> {
    let n = same_size(x, y)?;
    let ip = check_pair(n, i, k)?;
    if ip >= k {
        return Err(Error::Precondition(format!("P_{{{i},{k}}} needs i' < k")));
    }
    let mut total = F::zero(&x.ctx());
    for j in ip..=k {
        total = total + x.minor_m(i, j)? * y.minor_n(j, k)?;
    }
    Ok(total)
}

pub fn eval_rminus<F: Scalar>(x: &Matrix<F>, y: &Matrix<F>, i: usize, k: usize) -> Result<F, Error> {
    let n = same_size(x, y)?;
    let ip = check_pair(n, i, k)?;
    if ip >= k {
        return Err(Error::Precondition(format!("R-_{{{i},{k}}} needs i' < k")));
    }
    let lower = k - ip;
    let block = Matrix::from_fn(k, |r, c| {
        if r <= ip {
            x.get(i + r - 1, c).clone()
        } else {
            y.get(n - lower + (r - ip), c).clone()
        }
    });
    Ok(block.det())
}

pub fn eval_rplus<F: Scalar>(z: &Matrix<F>, x: &Matrix<F>, i: usize, k: usize) -> Result<F, Error> {
    let n = same_size(z, x)?;
    let ip = check_pair(n, i, k)?;
    if ip <= k {
        return Err(Error::Precondition(format!("R+_{{{i},{k}}} needs i' > k")));
    }
    let left = ip - k;
    let block = Matrix::from_fn(ip, |r, c| {
        if c <= left {
            z.get(i + r - 1, c).clone()
        } else {
            x.get(i + r - 1, c - left).clone()
        }
    });
    Ok(block.det())
}

/// Sign `ε` in `R⁻_ik(X, S⁺) = ε · M(X; rows [i,n], cols [k−i′+1, k]) · D_{k′+i′}(S⁺)`.
///
/// The stacked block is `[[X₁, X₂], [B, 0]]` with `X₂` of order `i′` and `B`
/// of order `k − i′`, so `ε = (−1)^{i′(k−i′)}`.
pub fn rminus_section_sign(n: usize, i: usize, k: usize) -> i64 {
    let ip = n + 1 - i;
    if (ip * (k - ip)).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign `ε` in `R⁺_ik(S⁻, X) = ε · D_{i+k}(S⁻) · M(X; rows [i, i+k−1], cols [1, k])`,
/// equal to `(−1)^{k(i′−k)}`.
pub fn rplus_section_sign(n: usize, i: usize, k: usize) -> i64 {
    let ip = n + 1 - i;
    if (k * (ip - k)).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum GeneratorKind {
    D,
    P,
    Rminus,
    Rplus,
}

impl GeneratorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GeneratorKind::D => "D",
            GeneratorKind::P => "P",
            GeneratorKind::Rminus => "Rminus",
            GeneratorKind::Rplus => "Rplus",
        }
    }
}

/// Which end of the arrow a generator was built for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Side {
    Source,
    Target,
    Diagonal,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Source => "source",
            Side::Target => "target",
            Side::Diagonal => "diagonal",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LeadingCoordinate {
    pub arrow: ArrowId,
    pub pos: IndexPair,
}

/// One generator: a family member together with the matrices it reads.
///
/// `arrows` holds one arrow for `D` and the ordered argument pair otherwise;
/// `i` is `None` for `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorDescriptor {
    pub kind: GeneratorKind,
    pub arrows: Vec<ArrowId>,
    pub i: Option<usize>,
    pub k: usize,
    pub leading: LeadingCoordinate,
    pub side: Side,
}

impl GeneratorDescriptor {
    pub fn corner(arrow: ArrowId, n: usize, k: usize) -> Self {
        Self {
            kind: GeneratorKind::D,
            arrows: alloc::vec![arrow],
            i: None,
            k,
            leading: LeadingCoordinate {
                arrow,
                pos: IndexPair::new(k, n + 1 - k),
            },
            side: Side::Diagonal,
        }
    }

    pub fn involves(&self, a: ArrowId) -> bool {
        self.arrows.contains(&a)
    }

    /// Human-readable label such as `Rplus(a1,a2)[1,1]`.
    pub fn label<'a>(&'a self, quiver: &'a Quiver) -> impl fmt::Display + 'a {
        Label { desc: self, quiver }
    }
}

struct Label<'a> {
    desc: &'a GeneratorDescriptor,
    quiver: &'a Quiver,
}

impl fmt::Display for Label<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.desc.kind.as_str())?;
        for (idx, a) in self.desc.arrows.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            f.write_str(self.quiver.arrow_name(*a))?;
        }
        match self.desc.i {
            Some(i) => write!(f, ")[{i},{}]", self.desc.k),
            None => write!(f, ")[{}]", self.desc.k),
        }
    }
}

pub fn eval_generator<F: Scalar>(desc: &GeneratorDescriptor, h: &RepPoint<F>) -> Result<F, Error> {
    let count = h.matrices().len();
    if let Some(a) = desc.arrows.iter().find(|a| a.0 >= count) {
        return Err(Error::UnknownArrow(format!("#{}", a.0)));
    }
    let m = |idx: usize| h.matrix(desc.arrows[idx]);
    let pair = || {
        if desc.arrows.len() != 2 {
            return Err(Error::Precondition(format!("{} needs two arrows", desc.kind.as_str())));
        }
        desc.i
            .ok_or_else(|| Error::Precondition(format!("{} needs an index i", desc.kind.as_str())))
    };
    match desc.kind {
        GeneratorKind::D => m(0).corner_minor(desc.k),
        GeneratorKind::P => eval_p(m(0), m(1), pair()?, desc.k),
        GeneratorKind::Rminus => eval_rminus(m(0), m(1), pair()?, desc.k),
        GeneratorKind::Rplus => eval_rplus(m(0), m(1), pair()?, desc.k),
    }
}

/// Exact partials `∂ desc / ∂ x_coord` at `h`, one dual evaluation per
/// coordinate that the descriptor actually reads.
pub fn partials<F: Scalar>(
    desc: &GeneratorDescriptor,
    h: &RepPoint<F>,
    coords: &[(ArrowId, IndexPair)],
) -> Result<Vec<F>, Error> {
    let ctx = h.matrix(ArrowId(0)).ctx();
    let lifted: RepPoint<Dual<F>> = h.map(|x| Dual::constant(x.clone()));
    coords
        .iter()
        .map(|&(arrow, pos)| {
            if arrow.0 >= h.matrices().len() {
                return Err(Error::UnknownArrow(format!("#{}", arrow.0)));
            }
            if !desc.involves(arrow) {
                return Ok(F::zero(&ctx));
            }
            let mut point = lifted.clone();
            let x = point.matrix_mut(arrow);
            let value = x.get(pos.row, pos.col).re.clone();
            x.set(pos.row, pos.col, Dual::variable(value));
            Ok(eval_generator(desc, &point)?.eps)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, PrimeField, Rational, Rationals};
    use crate::matrix::Shape;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_i64_rows(&Rationals, rows)
    }

    fn r(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    /// Random matrix restricted to a shape, all free entries random.
    fn restricted(n: usize, shape: Shape, rng: &mut ChaCha8Rng) -> Matrix<Fp> {
        let f = PrimeField::default();
        Matrix::from_fn(n, |i, j| {
            if shape.allows(n, i, j) {
                Fp::random(&f, rng)
            } else {
                f.element(0)
            }
        })
    }

    #[test]
    fn p_examples() {
        let x = q(&[&[2, 3, 5], &[7, 11, 13], &[17, 19, 23]]);
        let y = q(&[&[29, 31, 37], &[41, 43, 47], &[53, 59, 61]]);
        // P_33 = x31 y11 + x32 y21 + x33 y31
        assert_eq!(eval_p(&x, &y, 3, 3).unwrap(), r(17 * 29 + 19 * 41 + 23 * 53));
        // n = 2: P_22(X, X) = x21 (x11 + x22)
        let x2 = q(&[&[3, -4], &[5, 7]]);
        assert_eq!(eval_p(&x2, &x2, 2, 2).unwrap(), r(5 * (3 + 7)));
        assert!(matches!(eval_p(&x, &y, 1, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn rminus_and_rplus_small_cases() {
        let x = q(&[&[2, 3], &[5, 7]]);
        let y = q(&[&[11, 13], &[17, 19]]);
        // R-_22(X, Y) = det[[x21, x22], [y21, y22]]
        assert_eq!(eval_rminus(&x, &y, 2, 2).unwrap(), r(5 * 19 - 7 * 17));
        // R+_11(Z, X) = det[[z11, x11], [z21, x21]]
        assert_eq!(eval_rplus(&y, &x, 1, 1).unwrap(), r(11 * 5 - 2 * 17));
        assert!(eval_rminus(&x, &y, 1, 1).is_err());
        assert!(eval_rplus(&x, &y, 2, 2).is_err());
    }

    #[test]
    fn section_signs_match_structured_evaluation() {
        // oracle: evaluate at structured points with the restricted partner and
        // divide out the predicted product; the quotient must be ±1
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let f = PrimeField::default();
        for n in 1..=6 {
            for i in 1..=n {
                let ip = n + 1 - i;
                for k in 1..=n {
                    let x = restricted(n, Shape::Full, &mut rng);
                    if ip < k {
                        let s = restricted(n, Shape::UpperAnti, &mut rng);
                        let rows: Vec<usize> = (i..=n).collect();
                        let cols: Vec<usize> = (k - ip + 1..=k).collect();
                        let prod = x.minor(&rows, &cols).unwrap() * s.corner_minor(n + 1 - k + ip).unwrap();
                        let value = eval_rminus(&x, &s, i, k).unwrap();
                        let sign = value * prod.try_inv().unwrap();
                        assert_eq!(sign, f.element(rminus_section_sign(n, i, k)), "R- n={n} i={i} k={k}");
                    }
                    if ip > k {
                        let s = restricted(n, Shape::LowerAnti, &mut rng);
                        let rows: Vec<usize> = (i..i + k).collect();
                        let cols: Vec<usize> = (1..=k).collect();
                        let prod = x.minor(&rows, &cols).unwrap() * s.corner_minor(i + k).unwrap();
                        let value = eval_rplus(&s, &x, i, k).unwrap();
                        let sign = value * prod.try_inv().unwrap();
                        assert_eq!(sign, f.element(rplus_section_sign(n, i, k)), "R+ n={n} i={i} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn leading_coordinate_partials() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let quiver = Quiver::new(&["u", "v"], &[("x", "u", "v"), ("y", "u", "v")]).unwrap();
        let n = 3;
        let h = RepPoint::new(
            &quiver,
            alloc::vec![
                restricted(n, Shape::Full, &mut rng),
                restricted(n, Shape::LowerAnti, &mut rng)
            ],
        )
        .unwrap();
        // ∂P_32(X, S⁻)/∂x32 = D_2(S⁻)
        let desc = GeneratorDescriptor {
            kind: GeneratorKind::P,
            arrows: alloc::vec![ArrowId(0), ArrowId(1)],
            i: Some(3),
            k: 2,
            leading: LeadingCoordinate {
                arrow: ArrowId(0),
                pos: IndexPair::new(3, 2),
            },
            side: Side::Source,
        };
        let d = partials(&desc, &h, &[(ArrowId(0), IndexPair::new(3, 2))]).unwrap();
        assert_eq!(d[0], h.matrix(ArrowId(1)).corner_minor(2).unwrap());

        let dk = GeneratorDescriptor::corner(ArrowId(0), n, 1);
        let d = partials(&dk, &h, &[(ArrowId(1), IndexPair::new(1, 1))]).unwrap();
        assert!(d[0].is_zero());
    }

    #[test]
    fn generators_are_affine_in_the_leading_coordinate() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for n in 1..=4 {
            for i in 1..=n {
                let ip = n + 1 - i;
                for k in 1..=n {
                    let x = restricted(n, Shape::Full, &mut rng);
                    let y = restricted(n, Shape::Full, &mut rng);
                    let along = |t: i64, row: usize, col: usize, which: u8| {
                        let mut a = x.clone();
                        let mut b = y.clone();
                        if which == 0 {
                            a.set(row, col, f.element(t));
                        } else {
                            b.set(row, col, f.element(t));
                        }
                        (a, b)
                    };
                    let second = |g: &dyn Fn(i64) -> Fp| g(2) - g(1) - g(1) + g(0);
                    if ip < k {
                        let e = |t| {
                            let (a, b) = along(t, i, k, 0);
                            eval_p(&a, &b, i, k).unwrap()
                        };
                        assert!(second(&e).is_zero());
                        let e = |t| {
                            let (a, b) = along(t, i, k, 0);
                            eval_rminus(&a, &b, i, k).unwrap()
                        };
                        assert!(second(&e).is_zero());
                        // target side: P(Z, X) is affine in x_{i′,k′}
                        let e = |t| {
                            let (a, b) = along(t, ip, n + 1 - k, 1);
                            eval_p(&a, &b, i, k).unwrap()
                        };
                        assert!(second(&e).is_zero());
                    }
                    if ip > k {
                        let e = |t| {
                            let (a, b) = along(t, i, k, 1);
                            eval_rplus(&a, &b, i, k).unwrap()
                        };
                        assert!(second(&e).is_zero());
                    }
                }
            }
        }
    }
}
