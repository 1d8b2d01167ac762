//! `H^1(Z/2, G)` for a finite group with an involution `theta`, by
//! enumeration, and finite-level approximations of `H^1(Z/2, R^n / Z^n)`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::GaloisError;

/// Group given by its multiplication table on `0..order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteInvolutiveGroup {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub theta: Vec<usize>,
    #[serde(skip)]
    identity: usize,
    #[serde(skip)]
    inverses: Vec<usize>,
}

pub const MAX_ORDER: usize = 512;

impl FiniteInvolutiveGroup {
    pub fn new(table: Vec<Vec<usize>>, theta: Vec<usize>) -> Result<Self, GaloisError> {
        let order = table.len();
        let bad = |m: String| Err(GaloisError::InvalidGroup(m));
        if order == 0 || order > MAX_ORDER {
            return bad(format!("order {order} outside 1..={MAX_ORDER}"));
        }
        if table.iter().any(|row| row.len() != order || row.iter().any(|&x| x >= order)) {
            return bad("table is not an order x order array of elements".into());
        }
        let Some(identity) = (0..order).find(|&e| (0..order).all(|a| table[e][a] == a && table[a][e] == a)) else {
            return bad("no identity".into());
        };
        let mut inverses = vec![0; order];
        for a in 0..order {
            match (0..order).find(|&b| table[a][b] == identity && table[b][a] == identity) {
                Some(b) => inverses[a] = b,
                None => return bad(format!("{a} has no inverse")),
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!("({a} {b}) {c} != {a} ({b} {c})"));
                    }
                }
            }
        }
        if theta.len() != order || theta.iter().any(|&x| x >= order) {
            return Err(GaloisError::BadInvolution("theta has the wrong length".into()));
        }
        for a in 0..order {
            if theta[theta[a]] != a {
                return Err(GaloisError::BadInvolution(format!("theta^2({a}) != {a}")));
            }
            for b in 0..order {
                if theta[table[a][b]] != table[theta[a]][theta[b]] {
                    return Err(GaloisError::BadInvolution(format!("theta({a} {b}) != theta({a}) theta({b})")));
                }
            }
        }
        Ok(FiniteInvolutiveGroup { order, table, theta, identity, inverses })
    }

    pub fn with_trivial_theta(table: Vec<Vec<usize>>) -> Result<Self, GaloisError> {
        let n = table.len();
        Self::new(table, (0..n).collect())
    }

    pub fn with_theta(&self, theta: Vec<usize>) -> Result<Self, GaloisError> {
        Self::new(self.table.clone(), theta)
    }

    /// Parse `{order, table, theta}` and validate.
    pub fn from_json(text: &str) -> Result<Self, GaloisError> {
        #[derive(Deserialize)]
        struct Raw {
            order: usize,
            table: Vec<Vec<usize>>,
            theta: Option<Vec<usize>>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| GaloisError::InvalidGroup(e.to_string()))?;
        if raw.table.len() != raw.order {
            return Err(GaloisError::InvalidGroup(format!("order {} but {} rows", raw.order, raw.table.len())));
        }
        let theta = raw.theta.unwrap_or_else(|| (0..raw.order).collect());
        Self::new(raw.table, theta)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// The inversion map, an automorphism for abelian groups.
    pub fn inversion(&self) -> Vec<usize> {
        self.inverses.clone()
    }

    /// Conjugation by `g`, an automorphism; an involution when `g^2` is central.
    pub fn conjugation(&self, g: usize) -> Vec<usize> {
        let gi = self.inv(g);
        (0..self.order).map(|a| self.mul(self.mul(g, a), gi)).collect()
    }

    /// Closure of permutations of `0..degree` under composition.
    pub fn from_permutations(generators: &[Vec<usize>]) -> Result<Self, GaloisError> {
        let degree = generators.first().map_or(1, Vec::len);
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut seen: BTreeSet<Vec<usize>> = [id].into_iter().collect();
        let mut i = 0;
        while i < elems.len() {
            for g in generators {
                if g.len() != degree {
                    return Err(GaloisError::InvalidGroup("generators of mixed degree".into()));
                }
                let prod: Vec<usize> = (0..degree).map(|x| g[elems[i][x]]).collect();
                if seen.insert(prod.clone()) {
                    if elems.len() >= MAX_ORDER {
                        return Err(GaloisError::InvalidGroup("group too large".into()));
                    }
                    elems.push(prod);
                }
            }
            i += 1;
        }
        let index = |p: &Vec<usize>| elems.iter().position(|q| q == p).expect("closed");
        let table = elems
            .iter()
            .map(|a| elems.iter().map(|b| index(&(0..degree).map(|x| a[b[x]]).collect())).collect())
            .collect();
        Self::with_trivial_theta(table)
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::with_trivial_theta(table).expect("cyclic group")
    }

    /// Symmetries of an `n`-gon, order `2n`.
    pub fn dihedral(n: usize) -> Self {
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(&[rot, refl]).expect("dihedral group")
    }

    pub fn symmetric(n: usize) -> Self {
        let mut cycle: Vec<usize> = (1..n).collect();
        cycle.push(0);
        let mut swap: Vec<usize> = (0..n).collect();
        if n > 1 {
            swap.swap(0, 1);
        }
        Self::from_permutations(&[cycle, swap]).expect("symmetric group")
    }

    pub fn alternating4() -> Self {
        Self::from_permutations(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).expect("A4")
    }

    /// `{+-1, +-i, +-j, +-k}`, element `2u + sign` for unit `u` in `1, i, j, k`.
    pub fn quaternion() -> Self {
        // unit products: (sign flip, unit)
        const UNIT: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let table = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (flip, u) = UNIT[a / 2][b / 2];
                        2 * u + ((a % 2) ^ (b % 2) ^ flip)
                    })
                    .collect()
            })
            .collect();
        Self::with_trivial_theta(table).expect("Q8")
    }

    pub fn product(a: &Self, b: &Self) -> Self {
        let n = b.order;
        let table = (0..a.order * n)
            .map(|x| (0..a.order * n).map(|y| a.mul(x / n, y / n) * n + b.mul(x % n, y % n)).collect())
            .collect();
        let theta = (0..a.order * n).map(|x| a.theta[x / n] * n + b.theta[x % n]).collect();
        Self::new(table, theta).expect("direct product")
    }
}

/// Named groups of order at most 16, plus `S4`.
pub fn small_group_corpus() -> Vec<(String, FiniteInvolutiveGroup)> {
    type G = FiniteInvolutiveGroup;
    let c = G::cyclic;
    let mut v: Vec<(String, G)> = (1..=16).map(|n| (format!("C{n}"), c(n))).collect();
    v.extend((3..=8).map(|n| (format!("D{n}"), G::dihedral(n))));
    v.extend([
        ("C2xC2".to_string(), G::product(&c(2), &c(2))),
        ("C2xC4".into(), G::product(&c(2), &c(4))),
        ("C2xC6".into(), G::product(&c(2), &c(6))),
        ("C2xC8".into(), G::product(&c(2), &c(8))),
        ("C3xC3".into(), G::product(&c(3), &c(3))),
        ("C4xC4".into(), G::product(&c(4), &c(4))),
        ("C2xC2xC2".into(), G::product(&G::product(&c(2), &c(2)), &c(2))),
        ("C2xC2xC4".into(), G::product(&G::product(&c(2), &c(2)), &c(4))),
        ("C2^4".into(), G::product(&G::product(&c(2), &c(2)), &G::product(&c(2), &c(2)))),
        ("Q8".into(), G::quaternion()),
        ("Q8xC2".into(), G::product(&G::quaternion(), &c(2))),
        ("D4xC2".into(), G::product(&G::dihedral(4), &c(2))),
        ("A4".into(), G::alternating4()),
        ("S3".into(), G::symmetric(3)),
        ("S4".into(), G::symmetric(4)),
    ]);
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleClassSet {
    pub representatives: Vec<usize>,
    pub count: usize,
}

/// Cocycles `a theta(a) = e` modulo `a ~ b a theta(b)^-1`.
pub fn h1(g: &FiniteInvolutiveGroup) -> CocycleClassSet {
    let e = g.identity();
    let cocycles: Vec<usize> = (0..g.order).filter(|&a| g.mul(a, g.theta[a]) == e).collect();
    let mut class = vec![usize::MAX; g.order];
    let mut representatives = Vec::new();
    for &a in &cocycles {
        if class[a] != usize::MAX {
            continue;
        }
        for b in 0..g.order {
            let c = g.mul(g.mul(b, a), g.inv(g.theta[b]));
            class[c] = a;
        }
        representatives.push(a);
    }
    CocycleClassSet { count: representatives.len(), representatives }
}

/// Conjugacy classes of elements with `g^2 = e`, the identity included.
pub fn h1_trivial_action(g: &FiniteInvolutiveGroup) -> usize {
    let e = g.identity();
    let mut seen = vec![false; g.order];
    let mut count = 0;
    for a in (0..g.order).filter(|&a| g.mul(a, a) == e) {
        if seen[a] {
            continue;
        }
        count += 1;
        for b in 0..g.order {
            seen[g.mul(g.mul(b, a), g.inv(b))] = true;
        }
    }
    count
}

/// `|ker(1 + theta)| / |im(theta - 1)|`, written multiplicatively; abelian only.
pub fn abelian_quotient_count(g: &FiniteInvolutiveGroup) -> Result<usize, GaloisError> {
    if !g.is_abelian() {
        return Err(GaloisError::InvalidGroup("quotient formula needs an abelian group".into()));
    }
    let e = g.identity();
    let kernel = (0..g.order).filter(|&a| g.mul(a, g.theta[a]) == e).count();
    let image: BTreeSet<usize> = (0..g.order).map(|b| g.mul(g.theta[b], g.inv(b))).collect();
    Ok(kernel / image.len())
}

/// An integer matrix `g` with `g^2 = I` acting on `R^n / Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusActionSpec {
    pub n: usize,
    pub g: Vec<Vec<i64>>,
}

impl TorusActionSpec {
    pub fn new(g: Vec<Vec<i64>>) -> Result<Self, GaloisError> {
        let n = g.len();
        if g.iter().any(|r| r.len() != n) {
            return Err(GaloisError::NotInvolutive);
        }
        for i in 0..n {
            for j in 0..n {
                let v: i64 = (0..n).map(|k| g[i][k] * g[k][j]).sum();
                if v != i64::from(i == j) {
                    return Err(GaloisError::NotInvolutive);
                }
            }
        }
        Ok(TorusActionSpec { n, g })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusLevel {
    pub level: u64,
    /// `|H^1|` on `(1/L) Z^n / Z^n`.
    pub h1: usize,
    /// Size of the image of the level-`L` classes at level `2L`.
    pub image_at_double: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusColimit {
    pub levels: Vec<TorusLevel>,
    /// First level whose image size agrees with the next level's.
    pub stabilized_at: Option<u64>,
    pub value: usize,
}

/// Elements of `(Z/L)^n` as mixed-radix integers.
struct LevelModule<'a> {
    g: &'a [Vec<i64>],
    n: usize,
    l: i64,
}

impl LevelModule<'_> {
    fn size(&self) -> usize {
        (self.l as usize).pow(self.n as u32)
    }

    fn decode(&self, mut x: usize) -> Vec<i64> {
        (0..self.n)
            .map(|_| {
                let c = (x % self.l as usize) as i64;
                x /= self.l as usize;
                c
            })
            .collect()
    }

    fn encode(&self, v: &[i64]) -> usize {
        v.iter().rev().fold(0, |acc, &c| acc * self.l as usize + c.rem_euclid(self.l) as usize)
    }

    fn apply(&self, v: &[i64], plus: i64) -> Vec<i64> {
        (0..self.n).map(|i| (0..self.n).map(|k| self.g[i][k] * v[k]).sum::<i64>() + plus * v[i]).collect()
    }

    /// `ker(1 + g)` and `im(g - 1)`.
    fn cohomology(&self) -> (Vec<usize>, BTreeSet<usize>) {
        let mut cocycles = Vec::new();
        let mut boundaries = BTreeSet::new();
        for x in 0..self.size() {
            let v = self.decode(x);
            if self.apply(&v, 1).iter().all(|c| c.rem_euclid(self.l) == 0) {
                cocycles.push(x);
            }
            boundaries.insert(self.encode(&self.apply(&v, -1)));
        }
        (cocycles, boundaries)
    }

    fn class_of(&self, x: usize, boundaries: &BTreeSet<usize>) -> usize {
        let v = self.decode(x);
        boundaries
            .iter()
            .map(|&b| {
                let w = self.decode(b);
                self.encode(&v.iter().zip(&w).map(|(a, c)| a + c).collect::<Vec<_>>())
            })
            .min()
            .expect("0 is a boundary")
    }
}

pub const MAX_LEVEL_ELEMENTS: usize = 1 << 20;

/// `H^1` at levels `L0, 2 L0, ..., N_max` (`L0` the odd part of `N_max`),
/// with the images under the inclusions `x -> 2x`.
pub fn h1_torus_colimit(spec: &TorusActionSpec, n_max: u64) -> Result<TorusColimit, GaloisError> {
    if n_max < 4 || n_max % 2 == 1 {
        return Err(GaloisError::BadLevel(format!("N_max = {n_max} must be even and at least 4")));
    }
    TorusActionSpec::new(spec.g.clone())?;
    if (n_max as usize).checked_pow(spec.n as u32).map_or(true, |s| s > MAX_LEVEL_ELEMENTS) {
        return Err(GaloisError::BadLevel(format!("{n_max}^{} elements is too many", spec.n)));
    }
    let mut level = n_max;
    while level % 2 == 0 {
        level /= 2;
    }
    let mut levels = Vec::new();
    let mut prev: Option<(LevelModule, Vec<usize>)> = None;
    loop {
        let module = LevelModule { g: &spec.g, n: spec.n, l: level as i64 };
        let (cocycles, boundaries) = module.cohomology();
        let classes: BTreeSet<usize> = cocycles.iter().map(|&z| module.class_of(z, &boundaries)).collect();
        if let Some((pm, reps)) = prev.take() {
            let images: BTreeSet<usize> = reps
                .iter()
                .map(|&z| {
                    let doubled: Vec<i64> = pm.decode(z).iter().map(|c| 2 * c).collect();
                    module.class_of(module.encode(&doubled), &boundaries)
                })
                .collect();
            levels.last_mut().map(|l: &mut TorusLevel| l.image_at_double = Some(images.len()));
        }
        levels.push(TorusLevel { level, h1: classes.len(), image_at_double: None });
        if level >= n_max {
            break;
        }
        prev = Some((module, classes.into_iter().collect()));
        level *= 2;
    }
    let images: Vec<(u64, usize)> = levels.iter().filter_map(|l| l.image_at_double.map(|i| (l.level, i))).collect();
    let stabilized_at = images.windows(2).find(|w| w[0].1 == w[1].1).map(|w| w[0].0);
    let value = images.last().map(|&(_, i)| i).ok_or_else(|| GaloisError::BadLevel("no inclusion computed".into()))?;
    Ok(TorusColimit { levels, stabilized_at, value })
}

/// The three actions on `R/Z`, `R/Z`, `R^2/Z^2`: `1`, `-1` and `[[1, 1], [0, -1]]`.
pub fn reference_torus_cases() -> [TorusActionSpec; 3] {
    [
        TorusActionSpec::new(vec![vec![1]]).expect("involution"),
        TorusActionSpec::new(vec![vec![-1]]).expect("involution"),
        TorusActionSpec::new(vec![vec![1, 1], vec![0, -1]]).expect("involution"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        assert_eq!(h1(&FiniteInvolutiveGroup::cyclic(2)).count, 2);
        let z4 = FiniteInvolutiveGroup::cyclic(4);
        let inv = z4.with_theta(z4.inversion()).unwrap();
        assert_eq!(h1(&inv).count, 2);
        assert_eq!(h1(&FiniteInvolutiveGroup::symmetric(3)).count, 2);
        assert_eq!(h1_trivial_action(&FiniteInvolutiveGroup::dihedral(4)), 4);
    }

    #[test]
    fn quaternions() {
        let q = FiniteInvolutiveGroup::quaternion();
        assert_eq!(q.order, 8);
        assert!(!q.is_abelian());
        assert_eq!(h1_trivial_action(&q), 2);
    }

    #[test]
    fn torus_cases() {
        let got: Vec<usize> = reference_torus_cases().iter().map(|c| h1_torus_colimit(c, 16).unwrap().value).collect();
        assert_eq!(got, vec![2, 1, 1]);
        assert!(h1_torus_colimit(&reference_torus_cases()[0], 3).is_err());
        assert!(TorusActionSpec::new(vec![vec![2]]).is_err());
    }

    #[test]
    fn rejects_non_group() {
        assert!(FiniteInvolutiveGroup::with_trivial_theta(vec![vec![0, 1], vec![1, 1]]).is_err());
    }
}
