//! Images `{σ_X(ξ) : ξ ∈ G}` of single supercharacters, rendered as SVG.

use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::MatrixGroup;
use crate::modular::{dot_raw, GVector};
use crate::partition::{Action, Space};
use crate::table::{PhaseTable, Theory};

/// Largest `n^d` that will be swept.
pub const MAX_PLOT_POINTS: usize = 10_000_000;

const CANVAS: f64 = 800.0;
const MARGIN: f64 = 20.0;
const POINT_RADIUS: f64 = 1.5;
/// Values closer than this are drawn once.
const DEDUP_SCALE: f64 = 1e8;

#[derive(Debug, Clone)]
pub struct SupercharacterImage {
    /// `|X|`, which bounds every value.
    pub radius: f64,
    /// Distinct values sorted by `(re, im)`.
    pub points: Vec<Complex64>,
}

impl SupercharacterImage {
    /// Image of `σ_X` for `X` the orbit of `x` under `x ↦ A^{-T}x`.
    pub fn for_vector(group: &MatrixGroup, x: &GVector) -> Result<Self> {
        let space = Space::new(group.modulus(), group.dim())?;
        let actors = Action::InverseTranspose.generator_actors(group)?;
        let start = space.index_of(x)?;
        let mut orbit = vec![start];
        let mut seen = std::collections::HashSet::from([start]);
        let (mut v, mut w) = (vec![0u64; space.dim()], vec![0u64; space.dim()]);
        let mut next = 0;
        while next < orbit.len() {
            space.decode(orbit[next], &mut v);
            next += 1;
            for a in &actors {
                a.apply_raw(&v, &mut w);
                let idx = space.encode(&w);
                if seen.insert(idx) {
                    orbit.push(idx);
                }
            }
        }
        orbit.sort_unstable();
        Self::from_orbit(space, &orbit)
    }

    /// Image of `σ_i` for a class of the theory.
    pub fn for_class(theory: &Theory, i: usize) -> Result<Self> {
        let classes = theory.character_classes();
        if i >= classes.len() {
            return Err(Error::BadParameter(format!("class {i} out of range 0..{}", classes.len())));
        }
        Self::from_orbit(theory.space(), classes.class(i).members())
    }

    fn from_orbit(space: Space, orbit: &[usize]) -> Result<Self> {
        if space.size() > MAX_PLOT_POINTS {
            return Err(Error::CapExceeded { what: "plot points", cap: MAX_PLOT_POINTS as u64 });
        }
        let m = space.modulus();
        let phases = PhaseTable::new(m);
        let members: Vec<Vec<u64>> = orbit
            .iter()
            .map(|&i| {
                let mut c = vec![0u64; space.dim()];
                space.decode(i, &mut c);
                c
            })
            .collect();
        let mut keyed: Vec<((i64, i64), Complex64)> = (0..space.size())
            .into_par_iter()
            .map_init(
                || vec![0u64; space.dim()],
                |xi, index| {
                    space.decode(index, xi);
                    let z: Complex64 = members.iter().map(|x| phases.get(dot_raw(m, x, xi))).sum();
                    (((z.re * DEDUP_SCALE).round() as i64, (z.im * DEDUP_SCALE).round() as i64), z)
                },
            )
            .collect();
        keyed.sort_by_key(|&(k, _)| k);
        keyed.dedup_by_key(|&mut (k, _)| k);
        Ok(SupercharacterImage { radius: orbit.len() as f64, points: keyed.into_iter().map(|(_, z)| z).collect() })
    }

    /// Fixed 800×800 canvas, axes through the origin, a dot per value.
    pub fn to_svg(&self) -> String {
        let scale = (CANVAS / 2.0 - MARGIN) / self.radius.max(1.0);
        let c = CANVAS / 2.0;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
        );
        let _ = writeln!(s, r#"<rect width="{CANVAS}" height="{CANVAS}" fill="white"/>"#);
        let _ = writeln!(s, r##"<line x1="0" y1="{c}" x2="{CANVAS}" y2="{c}" stroke="#999999" stroke-width="1"/>"##);
        let _ = writeln!(s, r##"<line x1="{c}" y1="0" x2="{c}" y2="{CANVAS}" stroke="#999999" stroke-width="1"/>"##);
        let _ = writeln!(s, r#"<g fill="black">"#);
        for z in &self.points {
            let _ = writeln!(
                s,
                r#"<circle cx="{:.3}" cy="{:.3}" r="{POINT_RADIUS}"/>"#,
                c + z.re * scale,
                c - z.im * scale
            );
        }
        s.push_str("</g>\n</svg>\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::named::NamedTheory;
    use crate::modular::Modulus;

    #[test]
    fn trivial_character_is_one_point() {
        let theory = NamedTheory::Dft { n: 7, d: 2 }.build().unwrap();
        let img = SupercharacterImage::for_class(&theory, 0).unwrap();
        assert_eq!(img.points, vec![Complex64::new(1.0, 0.0)]);
    }

    #[test]
    fn max_collapse_two_points() {
        let theory = NamedTheory::MaxCollapse { n: 3, d: 2 }.build().unwrap();
        let img = SupercharacterImage::for_class(&theory, 1).unwrap();
        let re: Vec<f64> = img.points.iter().map(|z| z.re.round()).collect();
        assert_eq!(re, vec![-1.0, 8.0]);
    }

    #[test]
    fn symmetric_12_5() {
        let m = Modulus::new(12).unwrap();
        let group = MatrixGroup::permutations(m, 5).unwrap();
        let x = GVector::parse(m, "0,0,0,1,1").unwrap();
        let img = SupercharacterImage::for_vector(&group, &x).unwrap();
        assert_eq!(img.radius, 10.0);
        assert!(img.points.len() <= 12usize.pow(5));
        assert!(img.points.iter().all(|z| z.norm() <= img.radius + 1e-9));
        let svg = img.to_svg();
        assert_eq!(svg, SupercharacterImage::for_vector(&group, &x).unwrap().to_svg());
        assert_eq!(svg.matches("<circle").count(), img.points.len());
    }
}
