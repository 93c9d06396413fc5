use superfourier::catalog::NamedTheory;
use superfourier::group::{MatrixGroup, DEFAULT_CLOSURE_CAP, DEFAULT_ENUMERATION_CAP};
use superfourier::{Error, GMatrix, Modulus, Result, Theory};

use crate::args::{GroupKind, TheoryArgs};

/// A theory chosen on the command line.
pub enum Selection {
    Named(NamedTheory),
    Custom { name: String, group: MatrixGroup },
}

fn need<T>(v: Option<T>, flag: &str, theory: &str) -> Result<T> {
    v.ok_or_else(|| Error::BadParameter(format!("--{flag} is required for --theory {theory}")))
}

impl Selection {
    pub fn from_args(a: &TheoryArgs) -> Result<Self> {
        let theory = match (&a.theory, &a.group) {
            (Some(t), _) if t != "custom" => t.as_str(),
            (_, Some(GroupKind::Catalog(name))) => {
                if !a.generators.is_empty() {
                    return Err(Error::BadParameter("--group and --generators are mutually exclusive".into()));
                }
                name.as_str()
            }
            (Some(t), _) => t.as_str(),
            (None, None) if a.generators.is_empty() => "",
            (None, _) => "custom",
        };
        let named = match theory {
            "max-collapse" => NamedTheory::MaxCollapse { n: need(a.n, "n", theory)?, d: a.d.unwrap_or(1) },
            "dft" => NamedTheory::Dft { n: need(a.n, "n", theory)?, d: a.d.unwrap_or(1) },
            "dct" => NamedTheory::Dct { n: need(a.n, "n", theory)? },
            "gauss" => NamedTheory::Gauss { p: need(a.p, "p", theory)?, k: need(a.k, "k", theory)? },
            "kloosterman" => NamedTheory::Kloosterman { p: need(a.p, "p", theory)? },
            "heilbronn" => NamedTheory::Heilbronn { p: need(a.p, "p", theory)? },
            "ramanujan" => NamedTheory::Ramanujan { n: need(a.n, "n", theory)? },
            "symmetric" => NamedTheory::Symmetric { n: need(a.n, "n", theory)?, d: need(a.d, "d", theory)? },
            "jsym-triangular" => NamedTheory::JsymTriangular { p: need(a.p, "p", theory)? },
            "custom" => return Self::custom(a),
            "" => return Err(Error::BadParameter("--theory is required".into())),
            other => return Err(Error::BadParameter(format!("unknown --theory {other}"))),
        };
        named.validate()?;
        Ok(Selection::Named(named))
    }

    fn custom(a: &TheoryArgs) -> Result<Self> {
        let n = need(a.n, "n", "custom")?;
        let m = Modulus::new(n)?;
        let gens = a
            .generators
            .iter()
            .flat_map(|s| s.split('|'))
            .map(|s| GMatrix::parse(m, s.trim()))
            .collect::<Result<Vec<_>>>()?;
        let d = a.d.or(gens.first().map(GMatrix::dim)).unwrap_or(1);
        let mut group = match (a.group.clone(), a.generators.is_empty()) {
            (Some(_), false) => {
                return Err(Error::BadParameter("--group and --generators are mutually exclusive".into()))
            }
            (Some(GroupKind::Gl), _) => MatrixGroup::general_linear(m, d, DEFAULT_ENUMERATION_CAP)?,
            (Some(GroupKind::Sl), _) => MatrixGroup::special_linear(m, d, DEFAULT_ENUMERATION_CAP)?,
            (Some(GroupKind::Permutations), _) => MatrixGroup::permutations(m, d)?,
            (Some(GroupKind::Trivial), _) => MatrixGroup::closure(m, d, &[], DEFAULT_CLOSURE_CAP)?,
            (Some(GroupKind::Catalog(_)), _) => unreachable!("catalog groups resolve to named theories"),
            (None, true) => return Err(Error::BadParameter("--theory custom needs --generators or --group".into())),
            (None, false) => MatrixGroup::closure(m, d, &gens, DEFAULT_CLOSURE_CAP)?,
        };
        if let Some(j) = &a.j {
            group = group.with_j(&GMatrix::parse(m, j)?);
        }
        Ok(Selection::Custom { name: format!("custom({n},{d})"), group })
    }

    pub fn group(&self) -> Result<MatrixGroup> {
        match self {
            Selection::Named(t) => t.group(),
            Selection::Custom { group, .. } => Ok(group.clone()),
        }
    }

    pub fn build(&self) -> Result<Theory> {
        match self {
            Selection::Named(t) => t.build(),
            Selection::Custom { name, group } => Theory::new(name.clone(), group.clone()),
        }
    }
}
