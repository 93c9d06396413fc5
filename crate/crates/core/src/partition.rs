//! Orbit partitions of `G = (ℤ/nℤ)^d` under a matrix group.
//!
//! Superclasses are orbits of `y ↦ Ay`; the supercharacter index sets are
//! orbits of `x ↦ A^{-T}x`. Vectors are encoded as mixed-radix integers
//! with the first coordinate most significant, so integer order is
//! lexicographic order and the zero vector encodes to `0`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::MatrixGroup;
use crate::modular::{GMatrix, GVector, Modulus};

/// Largest `n^d` that may be materialized by a partition sweep.
pub const MAX_SPACE_SIZE: u64 = 10_000_000;

/// The finite set `(ℤ/nℤ)^d` with a dense integer encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Space {
    modulus: Modulus,
    dim: usize,
    size: usize,
}

impl Space {
    pub fn new(modulus: Modulus, dim: usize) -> Result<Self> {
        let size = modulus
            .get()
            .checked_pow(dim as u32)
            .filter(|&s| s <= MAX_SPACE_SIZE)
            .ok_or(Error::CapExceeded { what: "n^d", cap: MAX_SPACE_SIZE })?;
        Ok(Space { modulus, dim, size: size as usize })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `n^d`.
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn encode(&self, coords: &[u64]) -> usize {
        let n = self.modulus.get() as usize;
        coords.iter().fold(0usize, |acc, &c| acc * n + c as usize)
    }

    #[inline]
    pub fn decode(&self, mut index: usize, out: &mut [u64]) {
        let n = self.modulus.get() as usize;
        for c in out.iter_mut().rev() {
            *c = (index % n) as u64;
            index /= n;
        }
    }

    pub fn vector(&self, index: usize) -> GVector {
        let mut coords = vec![0u64; self.dim];
        self.decode(index, &mut coords);
        GVector::new(self.modulus, coords).expect("dimension is at least 1")
    }

    pub fn index_of(&self, v: &GVector) -> Result<usize> {
        if v.modulus() != self.modulus {
            return Err(Error::ModulusMismatch { left: self.modulus.get(), right: v.modulus().get() });
        }
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: v.dim() });
        }
        Ok(self.encode(v.coords()))
    }

    pub fn neg(&self, index: usize) -> usize {
        let mut c = vec![0u64; self.dim];
        self.decode(index, &mut c);
        for x in c.iter_mut() {
            *x = self.modulus.neg(*x);
        }
        self.encode(&c)
    }
}

/// Which action of `Γ` the orbits are taken under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Action {
    /// `y ↦ Ay`, giving the superclasses.
    Direct,
    /// `x ↦ A^{-T}x`, giving the supercharacter index sets.
    InverseTranspose,
}

impl Action {
    /// The matrices that act on vectors under this action.
    pub fn actors(self, group: &MatrixGroup) -> Result<Vec<GMatrix>> {
        match self {
            Action::Direct => Ok(group.elements().to_vec()),
            Action::InverseTranspose => group.elements().iter().map(|a| a.inverse_transpose()).collect(),
        }
    }

    /// Images of the group's generators, which generate the acting group.
    pub fn generator_actors(self, group: &MatrixGroup) -> Result<Vec<GMatrix>> {
        match self {
            Action::Direct => Ok(group.generators().to_vec()),
            Action::InverseTranspose => group.generators().iter().map(|a| a.inverse_transpose()).collect(),
        }
    }
}

/// One orbit, stored as sorted encoded members; `rep` is the smallest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Superclass {
    members: Vec<usize>,
}

impl Superclass {
    pub fn rep_index(&self) -> usize {
        self.members[0]
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// An ordered partition of `(ℤ/nℤ)^d` into `Γ`-orbits.
#[derive(Debug, Clone)]
pub struct SuperclassPartition {
    space: Space,
    action: Action,
    group_order: usize,
    classes: Vec<Superclass>,
    class_of: Vec<u32>,
    negation: Vec<usize>,
}

impl SuperclassPartition {
    /// Sweeps `G` in lexicographic order; each unvisited vector seeds the orbit
    /// it is the lexicographically smallest member of. Classes are therefore
    /// ordered by representative and `{0}` is class 0.
    pub fn compute(group: &MatrixGroup, action: Action) -> Result<Self> {
        let space = Space::new(group.modulus(), group.dim())?;
        let actors = action.generator_actors(group)?;
        let mut class_of = vec![u32::MAX; space.size()];
        let mut classes = Vec::new();
        let mut v = vec![0u64; space.dim()];
        let mut w = vec![0u64; space.dim()];
        for index in 0..space.size() {
            if class_of[index] != u32::MAX {
                continue;
            }
            // orbit as the closure of {index} under the generators
            let id = classes.len() as u32;
            class_of[index] = id;
            let mut members = vec![index];
            let mut next = 0;
            while next < members.len() {
                space.decode(members[next], &mut v);
                next += 1;
                for a in &actors {
                    a.apply_raw(&v, &mut w);
                    let x = space.encode(&w);
                    if class_of[x] == u32::MAX {
                        class_of[x] = id;
                        members.push(x);
                    } else if class_of[x] != id {
                        return Err(Error::InternalInconsistency(format!(
                            "vector {x} lies in two orbits; is the group closed?"
                        )));
                    }
                }
            }
            members.sort_unstable();
            classes.push(Superclass { members });
        }
        let mut partition = SuperclassPartition {
            space,
            action,
            group_order: group.order(),
            classes,
            class_of,
            negation: Vec::new(),
        };
        partition.negation = partition.negation_pairing()?;
        Ok(partition)
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn action(&self) -> Action {
        self.action
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    /// `N`, the number of classes.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Superclass] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &Superclass {
        &self.classes[i]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Superclass::size).collect()
    }

    pub fn max_size(&self) -> usize {
        self.classes.iter().map(Superclass::size).max().unwrap_or(0)
    }

    pub fn rep(&self, i: usize) -> GVector {
        self.space.vector(self.classes[i].rep_index())
    }

    /// Class index of an encoded vector.
    #[inline]
    pub fn class_of_index(&self, index: usize) -> usize {
        self.class_of[index] as usize
    }

    pub fn class_of(&self, v: &GVector) -> Result<usize> {
        Ok(self.class_of_index(self.space.index_of(v)?))
    }

    /// Index of the class `{0}`.
    pub fn zero_index(&self) -> usize {
        self.class_of[0] as usize
    }

    /// `π` with `-X_i = X_{π(i)}`.
    pub fn negation(&self) -> &[usize] {
        &self.negation
    }

    /// Computes `π` from scratch, checking that `-X_i` is exactly a class.
    pub fn negation_pairing(&self) -> Result<Vec<usize>> {
        let mut pi = Vec::with_capacity(self.classes.len());
        for (i, class) in self.classes.iter().enumerate() {
            let target = self.class_of_index(self.space.neg(class.rep_index()));
            let image_ok = self.classes[target].size() == class.size()
                && class.members.iter().all(|&x| self.class_of_index(self.space.neg(x)) == target);
            if !image_ok {
                return Err(Error::InternalInconsistency(format!("-X_{i} is not a superclass")));
            }
            pi.push(target);
        }
        Ok(pi)
    }

    /// Reorders classes so that new class `i` is old class `order[i]`.
    pub fn reordered(&self, order: &[usize]) -> Result<Self> {
        let n = self.classes.len();
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&o| o >= n || std::mem::replace(&mut seen[o], true)) {
            return Err(Error::BadParameter("class order is not a permutation".into()));
        }
        let classes: Vec<Superclass> = order.iter().map(|&o| self.classes[o].clone()).collect();
        let mut class_of = vec![0u32; self.class_of.len()];
        for (i, c) in classes.iter().enumerate() {
            for &x in &c.members {
                class_of[x] = i as u32;
            }
        }
        let mut out = SuperclassPartition {
            space: self.space,
            action: self.action,
            group_order: self.group_order,
            classes,
            class_of,
            negation: Vec::new(),
        };
        out.negation = out.negation_pairing()?;
        Ok(out)
    }

    /// True when both partitions have the same classes in the same order.
    pub fn same_classes(&self, other: &SuperclassPartition) -> bool {
        self.space == other.space && self.classes == other.classes
    }

    pub fn export(&self) -> PartitionExport {
        PartitionExport {
            n: self.space.modulus().get(),
            d: self.space.dim(),
            classes_count: self.len(),
            action: self.action,
            classes: self
                .classes
                .iter()
                .map(|c| ClassExport {
                    rep: self.space.vector(c.rep_index()).coords().to_vec(),
                    size: c.size(),
                })
                .collect(),
            negation: self.negation.clone(),
        }
    }
}

/// Serializable summary of a partition.
#[derive(Debug, Clone, Serialize)]
pub struct PartitionExport {
    pub n: u64,
    pub d: usize,
    #[serde(rename = "N")]
    pub classes_count: usize,
    pub action: Action,
    pub classes: Vec<ClassExport>,
    pub negation: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassExport {
    pub rep: Vec<u64>,
    pub size: usize,
}

/// `|{A ∈ Γ : Av = v}|`.
pub fn stabilizer_order(group: &MatrixGroup, v: &GVector) -> Result<usize> {
    let mut count = 0;
    for a in group.elements() {
        if a.apply(v)? == *v {
            count += 1;
        }
    }
    Ok(count)
}

/// Stabilizer order under the given action.
pub fn stabilizer_order_under(group: &MatrixGroup, action: Action, v: &GVector) -> Result<usize> {
    let mut count = 0;
    for a in action.actors(group)? {
        if a.apply(v)? == *v {
            count += 1;
        }
    }
    Ok(count)
}

/// For a `J`-symmetric group, the map `i ↦ k` with `J·Y_i = X_k`, where
/// `py` holds the `Direct` orbits and `px` the `InverseTranspose` orbits.
pub fn j_pairing(
    py: &SuperclassPartition,
    px: &SuperclassPartition,
    j: &GMatrix,
) -> Result<Vec<usize>> {
    let space = py.space();
    if px.space() != space || px.len() != py.len() {
        return Err(Error::NotJSymmetric("partitions have different shapes".into()));
    }
    let mut map = Vec::with_capacity(py.len());
    let mut used = vec![false; px.len()];
    let mut w = vec![0u64; space.dim()];
    let mut v = vec![0u64; space.dim()];
    for (i, class) in py.classes().iter().enumerate() {
        let mut image: Vec<usize> = class
            .members()
            .iter()
            .map(|&y| {
                space.decode(y, &mut v);
                j.apply_raw(&v, &mut w);
                space.encode(&w)
            })
            .collect();
        image.sort_unstable();
        let k = px.class_of_index(image[0]);
        if px.class(k).members() != image.as_slice() || used[k] {
            return Err(Error::NotJSymmetric(format!("J·Y_{i} is not a character orbit")));
        }
        used[k] = true;
        map.push(k);
    }
    Ok(map)
}
