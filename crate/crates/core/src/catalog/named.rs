//! The built-in families of supercharacter theories.

use std::fmt;

use super::arith::{divisors, is_odd_prime, primitive_root};
use crate::error::{Error, Result};
use crate::group::{MatrixGroup, Symmetry, DEFAULT_CLOSURE_CAP, DEFAULT_ENUMERATION_CAP};
use crate::modular::{GMatrix, Modulus};
use crate::table::Theory;

/// A named theory together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedTheory {
    /// `Γ = GL_d(ℤ/nℤ)`.
    MaxCollapse { n: u64, d: usize },
    /// Trivial `Γ` on `(ℤ/nℤ)^d`.
    Dft { n: u64, d: usize },
    /// `Γ = {±1}` on `ℤ/nℤ`.
    Dct { n: u64 },
    /// The index-`k` subgroup of `(ℤ/pℤ)^×`.
    Gauss { p: u64, k: u64 },
    /// `Γ = {diag(u, u⁻¹)}` on `(ℤ/pℤ)²`.
    Kloosterman { p: u64 },
    /// `Γ = {ℓ^p mod p²}` on `ℤ/p²ℤ`.
    Heilbronn { p: u64 },
    /// `Γ = (ℤ/nℤ)^×`.
    Ramanujan { n: u64 },
    /// Permutation matrices on `(ℤ/nℤ)^d`.
    Symmetric { n: u64, d: usize },
    /// Upper triangular `[[u, a], [0, u]]` on `(ℤ/pℤ)²` with `J` the swap.
    JsymTriangular { p: u64 },
}

impl fmt::Display for NamedTheory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NamedTheory::MaxCollapse { n, d } => write!(f, "max-collapse({n},{d})"),
            NamedTheory::Dft { n, d: 1 } => write!(f, "dft({n})"),
            NamedTheory::Dft { n, d } => write!(f, "dft({n},{d})"),
            NamedTheory::Dct { n } => write!(f, "dct({n})"),
            NamedTheory::Gauss { p, k } => write!(f, "gauss({p},{k})"),
            NamedTheory::Kloosterman { p } => write!(f, "kloosterman({p})"),
            NamedTheory::Heilbronn { p } => write!(f, "heilbronn({p})"),
            NamedTheory::Ramanujan { n } => write!(f, "ramanujan({n})"),
            NamedTheory::Symmetric { n, d } => write!(f, "symmetric({n},{d})"),
            NamedTheory::JsymTriangular { p } => write!(f, "jsym-triangular({p})"),
        }
    }
}

fn odd_prime(p: u64) -> Result<()> {
    if is_odd_prime(p) {
        Ok(())
    } else {
        Err(Error::BadParameter(format!("p = {p} must be an odd prime")))
    }
}

fn positive(n: u64, d: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::BadParameter("n must be at least 1".into()));
    }
    if d == 0 {
        return Err(Error::BadParameter("d must be at least 1".into()));
    }
    Ok(())
}

impl NamedTheory {
    /// Checks the parameter conditions without building anything.
    pub fn validate(&self) -> Result<()> {
        match *self {
            NamedTheory::MaxCollapse { n, d } | NamedTheory::Dft { n, d } | NamedTheory::Symmetric { n, d } => {
                positive(n, d)
            }
            NamedTheory::Dct { n } | NamedTheory::Ramanujan { n } => positive(n, 1),
            NamedTheory::Gauss { p, k } => {
                odd_prime(p)?;
                if k == 0 || (p - 1) % k != 0 {
                    return Err(Error::BadParameter(format!("k = {k} must divide p - 1 = {}", p - 1)));
                }
                Ok(())
            }
            NamedTheory::Kloosterman { p } | NamedTheory::Heilbronn { p } | NamedTheory::JsymTriangular { p } => {
                odd_prime(p)
            }
        }
    }

    pub fn modulus(&self) -> u64 {
        match *self {
            NamedTheory::MaxCollapse { n, .. }
            | NamedTheory::Dft { n, .. }
            | NamedTheory::Dct { n }
            | NamedTheory::Ramanujan { n }
            | NamedTheory::Symmetric { n, .. } => n,
            NamedTheory::Gauss { p, .. } | NamedTheory::Kloosterman { p } | NamedTheory::JsymTriangular { p } => p,
            NamedTheory::Heilbronn { p } => p * p,
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            NamedTheory::MaxCollapse { d, .. } | NamedTheory::Dft { d, .. } | NamedTheory::Symmetric { d, .. } => d,
            NamedTheory::Kloosterman { .. } | NamedTheory::JsymTriangular { .. } => 2,
            _ => 1,
        }
    }

    /// The `J` the family is declared with, if any.
    pub fn j(&self) -> Option<GMatrix> {
        match *self {
            NamedTheory::JsymTriangular { p } => {
                Some(GMatrix::from_rows(Modulus::new(p).ok()?, &[&[0, 1], &[1, 0]]).ok()?)
            }
            _ => None,
        }
    }

    /// Number of superclasses, where a closed form is known.
    pub fn expected_classes(&self) -> Option<usize> {
        let count = match *self {
            NamedTheory::MaxCollapse { n: 1, .. } => 1,
            NamedTheory::MaxCollapse { n, .. } => {
                if super::arith::is_prime(n) {
                    2
                } else {
                    return None;
                }
            }
            NamedTheory::Dft { n, d } => n.checked_pow(d as u32)? as usize,
            NamedTheory::Dct { n } => (n / 2 + 1) as usize,
            NamedTheory::Gauss { k, .. } => k as usize + 1,
            NamedTheory::Kloosterman { p } | NamedTheory::Heilbronn { p } => p as usize + 2,
            NamedTheory::Ramanujan { n } => divisors(n).len(),
            NamedTheory::Symmetric { n, d } => {
                // multisets of size d from n symbols
                let mut c = 1u128;
                for i in 0..d as u128 {
                    c = c * (n as u128 + i) / (i + 1);
                }
                usize::try_from(c).ok()?
            }
            NamedTheory::JsymTriangular { .. } => 3,
        };
        Some(count)
    }

    pub fn group(&self) -> Result<MatrixGroup> {
        self.validate()?;
        let m = Modulus::new(self.modulus())?;
        let d = self.dim();
        let scalar = |v: u64| GMatrix::new(m, 1, vec![v]);
        let group = match *self {
            NamedTheory::MaxCollapse { .. } | NamedTheory::Ramanujan { .. } => {
                MatrixGroup::general_linear(m, d, DEFAULT_ENUMERATION_CAP)?
            }
            NamedTheory::Dft { .. } => MatrixGroup::closure(m, d, &[], DEFAULT_CLOSURE_CAP)?,
            NamedTheory::Dct { .. } => MatrixGroup::closure(m, 1, &[scalar(m.neg(m.reduce(1)))?], DEFAULT_CLOSURE_CAP)?,
            NamedTheory::Gauss { p, k } => {
                let g = primitive_root(p).expect("odd primes have primitive roots");
                MatrixGroup::closure(m, 1, &[scalar(m.pow(g, k))?], DEFAULT_CLOSURE_CAP)?
            }
            NamedTheory::Kloosterman { p } => {
                let g = primitive_root(p).expect("odd primes have primitive roots");
                let gi = m.inv(g).expect("units are invertible");
                MatrixGroup::closure(m, 2, &[GMatrix::diagonal(m, &[g, gi])], DEFAULT_CLOSURE_CAP)?
            }
            NamedTheory::Heilbronn { p } => {
                let elements = (1..p).map(|l| scalar(m.pow(l, p))).collect::<Result<Vec<_>>>()?;
                MatrixGroup::from_elements(m, 1, elements)?
            }
            NamedTheory::Symmetric { .. } => MatrixGroup::permutations(m, d)?,
            NamedTheory::JsymTriangular { p } => {
                let g = primitive_root(p).expect("odd primes have primitive roots");
                let gens = [GMatrix::diagonal(m, &[g, g]), GMatrix::from_rows(m, &[&[1, 1], &[0, 1]])?];
                MatrixGroup::closure(m, 2, &gens, DEFAULT_CLOSURE_CAP)?
            }
        };
        Ok(match self.j() {
            Some(j) => group.with_j(&j),
            None => group,
        })
    }

    /// Builds the group, checks its declared symmetry and the class count,
    /// and computes both partitions.
    pub fn build(&self) -> Result<Theory> {
        let group = self.group()?;
        let declared_ok = match (self.j(), group.symmetry()) {
            (None, Symmetry::Symmetric) => true,
            (Some(j), Symmetry::JSymmetric(found)) => &j == found,
            _ => false,
        };
        if !declared_ok {
            return Err(Error::InternalInconsistency(format!(
                "{self}: group classified as {:?}",
                group.symmetry()
            )));
        }
        let theory = Theory::new(self.to_string(), group)?;
        if let Some(expected) = self.expected_classes() {
            if theory.num_classes() != expected {
                return Err(Error::InternalInconsistency(format!(
                    "{self}: {} classes, expected {expected}",
                    theory.num_classes()
                )));
            }
        }
        Ok(theory)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::GVector;

    #[test]
    fn class_counts() {
        let cases = [
            NamedTheory::MaxCollapse { n: 5, d: 2 },
            NamedTheory::MaxCollapse { n: 1, d: 3 },
            NamedTheory::Dft { n: 3, d: 2 },
            NamedTheory::Dct { n: 10 },
            NamedTheory::Dct { n: 9 },
            NamedTheory::Gauss { p: 13, k: 4 },
            NamedTheory::Kloosterman { p: 7 },
            NamedTheory::Heilbronn { p: 5 },
            NamedTheory::Ramanujan { n: 36 },
            NamedTheory::Symmetric { n: 4, d: 3 },
            NamedTheory::JsymTriangular { p: 5 },
        ];
        for t in cases {
            let theory = t.build().unwrap();
            assert_eq!(Some(theory.num_classes()), t.expected_classes(), "{t}");
        }
    }

    #[test]
    fn gauss_5_2_classes() {
        let theory = NamedTheory::Gauss { p: 5, k: 2 }.build().unwrap();
        let members: Vec<Vec<usize>> =
            theory.superclasses().classes().iter().map(|c| c.members().to_vec()).collect();
        assert_eq!(members, vec![vec![0], vec![1, 4], vec![2, 3]]);
    }

    #[test]
    fn kloosterman_orbits() {
        let p = 7;
        let theory = NamedTheory::Kloosterman { p }.build().unwrap();
        let part = theory.superclasses();
        assert!(part.classes()[1..].iter().all(|c| c.size() as u64 == p - 1));
        // (x, u x⁻¹) all lie in the class of (1, u)
        let m = Modulus::new(p).unwrap();
        for u in 1..p {
            let base = part.class_of(&GVector::new(m, vec![1, u]).unwrap()).unwrap();
            for x in 1..p {
                let v = GVector::new(m, vec![x, m.mul(u, m.inv(x).unwrap())]).unwrap();
                assert_eq!(part.class_of(&v).unwrap(), base);
            }
        }
    }

    #[test]
    fn heilbronn_orbits() {
        let p = 5u64;
        let theory = NamedTheory::Heilbronn { p }.build().unwrap();
        let part = theory.superclasses();
        let multiples: Vec<usize> = (1..p).map(|i| (i * p) as usize).collect();
        assert!(part.classes().iter().any(|c| c.members() == multiples.as_slice()));
        assert_eq!(part.class(0).members(), &[0]);
        assert!(theory.group().order() as u64 == p - 1);
    }

    #[test]
    fn composite_max_collapse_has_more_orbits() {
        let theory = NamedTheory::MaxCollapse { n: 4, d: 1 }.build().unwrap();
        assert_eq!(theory.num_classes(), 3);
    }

    #[test]
    fn bad_parameters() {
        for t in [
            NamedTheory::Gauss { p: 13, k: 5 },
            NamedTheory::Gauss { p: 9, k: 2 },
            NamedTheory::Kloosterman { p: 2 },
            NamedTheory::Heilbronn { p: 15 },
            NamedTheory::Dft { n: 0, d: 1 },
            NamedTheory::Symmetric { n: 3, d: 0 },
        ] {
            assert!(matches!(t.build(), Err(Error::BadParameter(_))), "{t}");
        }
    }

    #[test]
    fn names() {
        assert_eq!(NamedTheory::Gauss { p: 13, k: 2 }.to_string(), "gauss(13,2)");
        assert_eq!(NamedTheory::Dft { n: 8, d: 1 }.to_string(), "dft(8)");
        assert_eq!(NamedTheory::JsymTriangular { p: 3 }.to_string(), "jsym-triangular(3)");
    }
}
