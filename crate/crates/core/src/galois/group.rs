//! Finite groups given by Cayley tables.
//!
//! Elements are indices `0..order`. Words in the generators are integer
//! sequences: letter `k >= 1` is generator `k - 1`, letter `-k` its inverse.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::GaloisError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    identity: usize,
    generators: Vec<usize>,
    relations: Vec<Vec<i32>>,
}

/// JSON form: either a Cayley table (with generator indices) or a list of
/// permutations of `0..d`, which are closed into a table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cayley: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutations: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub relations: Vec<Vec<i32>>,
}

impl Serialize for FiniteGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_spec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        FiniteGroup::from_spec(&GroupSpec::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl FiniteGroup {
    pub fn from_spec(spec: &GroupSpec) -> Result<Self, GaloisError> {
        match (&spec.cayley, &spec.permutations) {
            (Some(t), None) => {
                let gens = spec.generators.clone().ok_or_else(|| GaloisError::NotAGroup("missing generators".into()))?;
                Self::from_cayley(t, gens, spec.relations.clone())
            }
            (None, Some(p)) => {
                if spec.generators.is_some() {
                    return Err(GaloisError::NotAGroup("generators are implied by the permutations".into()));
                }
                Self::from_permutations(p, spec.relations.clone())
            }
            _ => Err(GaloisError::NotAGroup("give exactly one of `cayley` or `permutations`".into())),
        }
    }

    pub fn to_spec(&self) -> GroupSpec {
        let n = self.order;
        GroupSpec {
            cayley: Some((0..n).map(|a| (0..n).map(|b| self.mul(a, b)).collect()).collect()),
            generators: Some(self.generators.clone()),
            permutations: None,
            relations: self.relations.clone(),
        }
    }

    /// Validate a Cayley table `table[a][b] = ab`.
    pub fn from_cayley(table: &[Vec<usize>], generators: Vec<usize>, relations: Vec<Vec<i32>>) -> Result<Self, GaloisError> {
        let n = table.len();
        if n == 0 {
            return Err(GaloisError::NotAGroup("empty table".into()));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(GaloisError::NotAGroup("table is not square with entries in range".into()));
        }
        Self::from_fn(n, |a, b| table[a][b], generators, relations)
    }

    /// Build from a multiplication function on `0..order` and validate.
    pub fn from_fn(
        order: usize,
        mul: impl Fn(usize, usize) -> usize,
        generators: Vec<usize>,
        relations: Vec<Vec<i32>>,
    ) -> Result<Self, GaloisError> {
        let n = order;
        let table: Vec<u32> = (0..n * n).map(|k| mul(k / n, k % n) as u32).collect();
        let at = |a: usize, b: usize| table[a * n + b] as usize;
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or_else(|| GaloisError::NotAGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(GaloisError::NotAGroup(format!("not associative on ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| at(a, b) == identity)
                .ok_or_else(|| GaloisError::NotAGroup(format!("element {a} has no inverse")))?;
            inverse[a] = b as u32;
        }
        if generators.iter().any(|&g| g >= n) {
            return Err(GaloisError::NotAGroup("generator index out of range".into()));
        }
        let g = FiniteGroup { order: n, table, inverse, identity, generators, relations };
        if g.closure(&g.generators).len() != n {
            return Err(GaloisError::NotGenerating);
        }
        for (i, w) in g.relations.iter().enumerate() {
            if g.eval_word(w)? != g.identity {
                return Err(GaloisError::RelationFails(i));
            }
        }
        Ok(g)
    }

    /// Close permutations of `0..d` under composition. Elements are sorted
    /// lexicographically as images, so the identity is element 0, and
    /// `(ab)(x) = a(b(x))`.
    pub fn from_permutations(perms: &[Vec<usize>], relations: Vec<Vec<i32>>) -> Result<Self, GaloisError> {
        let d = perms.first().map_or(0, |p| p.len());
        for p in perms {
            let mut seen = vec![false; d];
            if p.len() != d || p.iter().any(|&x| x >= d || std::mem::replace(&mut seen[x], true)) {
                return Err(GaloisError::NotAGroup("generators must be permutations of a common set".into()));
            }
        }
        let id: Vec<usize> = (0..d).collect();
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for p in perms {
                let y: Vec<usize> = p.iter().map(|&i| x[i]).collect();
                if all.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let elems: Vec<Vec<usize>> = all.into_iter().collect();
        let index: BTreeMap<&Vec<usize>, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let compose = |a: usize, b: usize| {
            let c: Vec<usize> = elems[b].iter().map(|&i| elems[a][i]).collect();
            index[&c]
        };
        let generators = perms.iter().map(|p| index[p]).collect();
        Self::from_fn(elems.len(), compose, generators, relations)
    }

    /// `Z/n` with generator 1 and relation `g^n`.
    pub fn cyclic(n: usize) -> Self {
        let rel = vec![vec![1; n]];
        Self::from_fn(n, |a, b| (a + b) % n, if n > 1 { vec![1] } else { vec![] }, if n > 1 { rel } else { vec![] })
            .expect("cyclic group")
    }

    /// `Z/m x| Z/n` with the generator of `Z/n` acting by `x -> r x`;
    /// element `(a, b)` has index `a + m b`. Generators `(1,0)`, `(0,1)`.
    pub fn metacyclic(m: usize, n: usize, r: usize) -> Result<Self, GaloisError> {
        let mut rp = vec![1usize; n + 1];
        for k in 1..=n {
            rp[k] = rp[k - 1] * r % m;
        }
        if rp[n] != 1 % m {
            return Err(GaloisError::NotAGroup(format!("{r}^{n} is not 1 mod {m}")));
        }
        let mul = |x: usize, y: usize| {
            let (a1, b1, a2, b2) = (x % m, x / m, y % m, y / m);
            (a1 + rp[b1] * a2) % m + m * ((b1 + b2) % n)
        };
        // a^m, b^n, b a b^-1 = a^r
        let mut conj = vec![2, 1, -2];
        conj.extend(std::iter::repeat_n(-1, r % m));
        Self::from_fn(m * n, mul, vec![1 % (m * n), m % (m * n)], vec![vec![1; m], vec![2; n], conj])
    }

    /// Dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> Self {
        Self::metacyclic(n, 2, n - 1).expect("dihedral group")
    }

    /// `S_n` as permutations, generated by `(0 1)` and the `n`-cycle.
    pub fn symmetric(n: usize) -> Self {
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let rels = if n == 3 { vec![vec![1, 1], vec![2, 2, 2], vec![1, 2, 1, 2]] } else { vec![] };
        Self::from_permutations(&[swap, cycle], rels).expect("symmetric group")
    }

    /// `A_4`, generated by `(0 1)(2 3)` and `(0 1 2)`.
    pub fn alternating4() -> Self {
        Self::from_permutations(&[vec![1, 0, 3, 2], vec![1, 2, 0, 3]], vec![vec![1, 1], vec![2, 2, 2], vec![1, 2, 1, 2, 1, 2]])
            .expect("alternating group")
    }

    /// Quaternion group `Q_8` with generators `i`, `j`.
    pub fn quaternion() -> Self {
        // units of the quaternions: index = 4*sign + unit, unit in {1, i, j, k}
        let unit_mul = |a: usize, b: usize| -> (bool, usize) {
            match (a, b) {
                (0, x) | (x, 0) => (false, x),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 1) => (true, 3),
                (2, 3) => (false, 1),
                (3, 2) => (true, 1),
                (3, 1) => (false, 2),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let mul = |x: usize, y: usize| {
            let (neg, u) = unit_mul(x % 4, y % 4);
            let sign = (x / 4 + y / 4 + neg as usize) % 2;
            4 * sign + u
        };
        Self::from_fn(8, mul, vec![1, 2], vec![vec![1, 1, 1, 1], vec![1, 1, -2, -2], vec![1, 2, 1, -2]]).expect("quaternion group")
    }

    /// `a x b` with index `i + |a| j`; generators of `a` then of `b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let na = a.order;
        let mul = |x: usize, y: usize| a.mul(x % na, y % na) + na * b.mul(x / na, y / na);
        let mut gens: Vec<usize> = a.generators.iter().map(|&g| g + na * b.identity).collect();
        gens.extend(b.generators.iter().map(|&g| a.identity + na * g));
        // relations of each factor, plus commutators between the factors
        let ka = a.generators.len() as i32;
        let mut rels: Vec<Vec<i32>> = a.relations.clone();
        rels.extend(b.relations.iter().map(|r| r.iter().map(|&l| l + l.signum() * ka).collect()));
        for i in 1..=ka {
            for j in 1..=b.generators.len() as i32 {
                rels.push(vec![i, j + ka, -i, -(j + ka)]);
            }
        }
        Self::from_fn(na * b.order, mul, gens, rels).expect("direct product")
    }

    /// One representative of every isomorphism class of groups of order at
    /// most 12, with a label.
    pub fn small_groups() -> Vec<(String, FiniteGroup)> {
        let c = FiniteGroup::cyclic;
        let mut out = Vec::new();
        for n in 1..=12 {
            out.push((format!("Z{n}"), c(n)));
        }
        out.push(("Z2xZ2".into(), Self::direct_product(&c(2), &c(2))));
        out.push(("Z4xZ2".into(), Self::direct_product(&c(4), &c(2))));
        out.push(("Z2xZ2xZ2".into(), Self::direct_product(&Self::direct_product(&c(2), &c(2)), &c(2))));
        out.push(("Z3xZ3".into(), Self::direct_product(&c(3), &c(3))));
        out.push(("Z6xZ2".into(), Self::direct_product(&c(6), &c(2))));
        for n in [3, 4, 5, 6] {
            out.push((format!("D{n}"), Self::dihedral(n)));
        }
        out.push(("Q8".into(), Self::quaternion()));
        out.push(("A4".into(), Self::alternating4()));
        out.push(("Dic3".into(), Self::metacyclic(3, 4, 2).expect("dicyclic group")));
        out.sort_by_key(|(_, g)| g.order());
        out
    }

    pub fn order(&self) -> usize {
        self.order
    }
    pub fn identity(&self) -> usize {
        self.identity
    }
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }
    pub fn relations(&self) -> &[Vec<i32>] {
        &self.relations
    }
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Evaluate a word in the generators.
    pub fn eval_word(&self, w: &[i32]) -> Result<usize, GaloisError> {
        let mut x = self.identity;
        for &l in w {
            let k = l.unsigned_abs() as usize;
            if k == 0 || k > self.generators.len() {
                return Err(GaloisError::BadWord(l));
            }
            let g = self.generators[k - 1];
            x = self.mul(x, if l > 0 { g } else { self.inv(g) });
        }
        Ok(x)
    }

    /// Elements in breadth-first order from the identity; each element after
    /// the first is `prev * gen` for an earlier `prev`.
    pub(crate) fn bfs_order(&self) -> Vec<(usize, Option<(usize, usize)>)> {
        let mut seen = vec![false; self.order];
        let mut out = vec![(self.identity, None)];
        seen[self.identity] = true;
        let mut i = 0;
        while i < out.len() {
            let x = out[i].0;
            for (k, &g) in self.generators.iter().enumerate() {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push((y, Some((k, x))));
                }
            }
            i += 1;
        }
        out
    }

    /// Sorted closure of a set of elements under multiplication.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    /// The subgroup generated by some elements.
    pub fn subgroup(&self, gens: &[usize]) -> Result<Subgroup, GaloisError> {
        if gens.iter().any(|&g| g >= self.order) {
            return Err(GaloisError::NotASubgroup);
        }
        let elements = self.closure(gens);
        Subgroup::build(self, elements, gens)
    }

    /// A subgroup given by its elements; closure is checked.
    pub fn subgroup_from_elements(&self, elements: &[usize]) -> Result<Subgroup, GaloisError> {
        let mut els: Vec<usize> = elements.to_vec();
        els.sort_unstable();
        els.dedup();
        if els.iter().any(|&g| g >= self.order) || self.closure(&els) != els {
            return Err(GaloisError::NotASubgroup);
        }
        Subgroup::build(self, els.clone(), &els)
    }

    /// Whole group as a subgroup of itself.
    pub fn whole(&self) -> Subgroup {
        Subgroup::build(self, (0..self.order).collect(), &self.generators).expect("whole group")
    }
}

/// A subgroup with its own Cayley table: subgroup element `i` is ambient
/// element `elements[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub elements: Vec<usize>,
    pub group: FiniteGroup,
}

impl Subgroup {
    fn build(ambient: &FiniteGroup, elements: Vec<usize>, gens: &[usize]) -> Result<Self, GaloisError> {
        let pos: BTreeMap<usize, usize> = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut local_gens: Vec<usize> = Vec::new();
        for g in gens {
            let &i = pos.get(g).ok_or(GaloisError::NotASubgroup)?;
            if g != &ambient.identity && !local_gens.contains(&i) {
                local_gens.push(i);
            }
        }
        let mul = |a: usize, b: usize| pos[&ambient.mul(elements[a], elements[b])];
        let group = FiniteGroup::from_fn(elements.len(), mul, local_gens, vec![])?;
        Ok(Subgroup { elements, group })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Position of an ambient element, if it lies in the subgroup.
    pub fn position(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.position(g).is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog() {
        let groups = FiniteGroup::small_groups();
        assert_eq!(groups.len(), 24);
        let ab: Vec<bool> = groups.iter().map(|(_, g)| g.is_abelian()).collect();
        assert_eq!(ab.iter().filter(|&&a| !a).count(), 7);
        for (name, g) in &groups {
            for (i, w) in g.relations().iter().enumerate() {
                assert_eq!(g.eval_word(w).unwrap(), g.identity(), "{name} relation {i}");
            }
        }
    }

    #[test]
    fn s3_from_permutations() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.identity(), 0);
        assert!(!s3.is_abelian());
        let spec = s3.to_spec();
        let again = FiniteGroup::from_spec(&spec).unwrap();
        assert_eq!(again, s3);
    }

    #[test]
    fn rejects_bad_tables() {
        let t = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(FiniteGroup::from_cayley(&t, vec![1], vec![]), Err(GaloisError::NotAGroup(_))));
        let z4 = FiniteGroup::cyclic(4);
        let t: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| z4.mul(a, b)).collect()).collect();
        assert_eq!(FiniteGroup::from_cayley(&t, vec![2], vec![]), Err(GaloisError::NotGenerating));
        assert_eq!(FiniteGroup::from_cayley(&t, vec![1], vec![vec![1, 1]]), Err(GaloisError::RelationFails(0)));
    }

    #[test]
    fn subgroups() {
        let s3 = FiniteGroup::symmetric(3);
        let h = s3.subgroup(&[s3.generators()[1]]).unwrap();
        assert_eq!(h.order(), 3);
        assert!(s3.subgroup_from_elements(&[0, s3.generators()[0], s3.generators()[1]]).is_err());
        assert_eq!(s3.whole().order(), 6);
    }
}
