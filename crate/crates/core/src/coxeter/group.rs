use std::collections::{BTreeMap, VecDeque};

use super::linalg::Mat;
use super::roots::{GroupLabel, RootSystem};
use super::CoxeterError;
use crate::scalars::Cyc;

pub const DEFAULT_CLOSURE_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct GroupElement {
    pub matrix: Mat,
    /// Word in the BFS generators (simple reflections for root-system groups).
    pub word: Vec<usize>,
}

/// A defining relation: a word in named generators that must equal the identity.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub word: Vec<(String, i32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: String,
    pub holds: bool,
}

/// A finite matrix group with its multiplication table.
///
/// Element 0 is the identity; elements are listed in BFS order.
#[derive(Debug)]
pub struct CoxeterGroup {
    pub root_system: Option<RootSystem>,
    dim: usize,
    elements: Vec<GroupElement>,
    index: BTreeMap<Mat, u32>,
    table: Vec<u32>,
    inverse: Vec<u32>,
    /// Element index of s_α for each positive root.
    reflections: Vec<u32>,
    generators: Vec<(String, u32)>,
    relations: Vec<Relation>,
}

impl CoxeterGroup {
    /// Closure of the simple reflections, BFS in root-list order.
    pub fn generate(rs: &RootSystem) -> Result<Self, CoxeterError> {
        Self::generate_with_budget(rs, DEFAULT_CLOSURE_BUDGET)
    }

    pub fn generate_with_budget(rs: &RootSystem, budget: usize) -> Result<Self, CoxeterError> {
        let gens: Vec<Mat> = rs.simple.iter().map(|&i| rs.reflection_matrix(i)).collect();
        let mut g = Self::closure(rs.ambient_dim, &gens, budget)?;
        g.reflections = (0..rs.positive_roots.len())
            .map(|i| {
                g.index_of(&rs.reflection_matrix(i))
                    .ok_or_else(|| CoxeterError::Invalid(format!("reflection {i} not in closure")))
            })
            .collect::<Result<_, _>>()?;
        g.name_generators(rs)?;
        g.root_system = Some(rs.clone());
        Ok(g)
    }

    /// The group with one element acting on R^dim.
    pub fn trivial(dim: usize) -> Self {
        Self::closure(dim, &[], 1).expect("trivial group")
    }

    /// Closure of arbitrary generating matrices, with generators named `g0, g1, …`.
    pub fn from_generators(dim: usize, gens: &[Mat], budget: usize) -> Result<Self, CoxeterError> {
        let mut g = Self::closure(dim, gens, budget)?;
        g.generators = (0..gens.len()).map(|i| (format!("g{i}"), g.index_of(&gens[i]).unwrap())).collect();
        Ok(g)
    }

    fn closure(dim: usize, gens: &[Mat], budget: usize) -> Result<Self, CoxeterError> {
        let id = Mat::identity(dim);
        let mut elements = vec![GroupElement { matrix: id.clone(), word: vec![] }];
        let mut index = BTreeMap::new();
        index.insert(id, 0u32);
        let mut queue = VecDeque::from([0usize]);
        while let Some(cur) = queue.pop_front() {
            for (gi, g) in gens.iter().enumerate() {
                let m = elements[cur].matrix.mul(g);
                if index.contains_key(&m) {
                    continue;
                }
                if elements.len() >= budget {
                    return Err(CoxeterError::ClosureBudgetExceeded(budget));
                }
                let mut word = elements[cur].word.clone();
                word.push(gi);
                index.insert(m.clone(), elements.len() as u32);
                queue.push_back(elements.len());
                elements.push(GroupElement { matrix: m, word });
            }
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let p = elements[i].matrix.mul(&elements[j].matrix);
                table[i * n + j] = *index.get(&p).ok_or_else(|| CoxeterError::Invalid("group not closed".into()))?;
            }
        }
        let inverse = (0..n).map(|i| (0..n).find(|&j| table[i * n + j] == 0).unwrap() as u32).collect();
        Ok(CoxeterGroup {
            root_system: None,
            dim,
            elements,
            index,
            table,
            inverse,
            reflections: vec![],
            generators: vec![],
            relations: vec![],
        })
    }

    fn name_generators(&mut self, rs: &RootSystem) -> Result<(), CoxeterError> {
        let refl = |k: usize| self.reflections[rs.simple[k]];
        let mut gens: Vec<(String, u32)> = Vec::new();
        let w = |name: &str, e: i32| (name.to_string(), e);
        let mut rels = Vec::new();
        match &rs.label {
            GroupLabel::B(l) | GroupLabel::A(l) => {
                let l = *l;
                let is_b = matches!(rs.label, GroupLabel::B(_));
                for i in 0..l - 1 {
                    gens.push((format!("t{}", i + 1), refl(i)));
                }
                if is_b {
                    gens.push(("r".into(), refl(l - 1)));
                    rels.push(Relation { name: "r^2".into(), word: vec![w("r", 2)] });
                }
                for i in 1..l {
                    let ti = format!("t{i}");
                    rels.push(Relation { name: format!("{ti}^2"), word: vec![w(&ti, 2)] });
                }
                for i in 1..l {
                    for j in i + 1..l {
                        let (ti, tj) = (format!("t{i}"), format!("t{j}"));
                        let e = if j == i + 1 { 3 } else { 2 };
                        let word = (0..e).flat_map(|_| [w(&ti, 1), w(&tj, 1)]).collect();
                        rels.push(Relation { name: format!("({ti} {tj})^{e}"), word });
                    }
                }
                if is_b {
                    for j in 1..l {
                        let tj = format!("t{j}");
                        let e = if j == l - 1 { 4 } else { 2 };
                        let word = (0..e).flat_map(|_| [w("r", 1), w(&tj, 1)]).collect();
                        rels.push(Relation { name: format!("(r {tj})^{e}"), word });
                    }
                }
            }
            GroupLabel::I2InR3(m) => {
                let (t, r) = (refl(0), refl(1));
                let a = self.mul(t, r);
                gens = vec![("t".into(), t), ("r".into(), r), ("a".into(), a), ("b".into(), t)];
                rels = dihedral_relations(*m as i32);
                rels.insert(0, Relation { name: "r^2".into(), word: vec![w("r", 2)] });
                rels.insert(1, Relation { name: "t^2".into(), word: vec![w("t", 2)] });
                rels.insert(
                    2,
                    Relation { name: format!("(t r)^{m}"), word: (0..*m).flat_map(|_| [w("t", 1), w("r", 1)]).collect() },
                );
            }
            GroupLabel::I2InR2(m) => {
                let m = *m;
                let order = rs.field_order;
                let (c, s) = (Cyc::cos_pi(2, m), Cyc::sin_pi(2, m));
                let e = |x: &Cyc| x.embed(order).expect("field order");
                let rot = Mat::from_rows(vec![vec![e(&c), e(&-&s)], vec![e(&s), e(&c)]]);
                let swap = Mat::from_int_rows(&[&[0, 1], &[1, 0]]);
                let a = self.index_of(&rot).ok_or_else(|| CoxeterError::Invalid("rotation a not in group".into()))?;
                let b = self.index_of(&swap).ok_or_else(|| CoxeterError::Invalid("swap b not in group".into()))?;
                gens = vec![("a".into(), a), ("b".into(), b), ("s0".into(), refl(0)), ("s1".into(), refl(1))];
                rels = dihedral_relations(m as i32);
                rels.push(Relation {
                    name: format!("(s0 s1)^{m}"),
                    word: (0..m).flat_map(|_| [w("s0", 1), w("s1", 1)]).collect(),
                });
            }
        }
        self.generators = gens;
        self.relations = rels;
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn element(&self, i: u32) -> &GroupElement {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn matrix(&self, i: u32) -> &Mat {
        &self.elements[i as usize].matrix
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.elements.len() + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn pow(&self, a: u32, e: i32) -> u32 {
        let base = if e < 0 { self.inv(a) } else { a };
        (0..e.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    pub fn index_of(&self, m: &Mat) -> Option<u32> {
        self.index.get(m).copied()
    }

    /// Element index of the reflection in the i-th positive root.
    pub fn reflection(&self, root: usize) -> u32 {
        self.reflections[root]
    }

    pub fn reflections(&self) -> &[u32] {
        &self.reflections
    }

    pub fn generators(&self) -> &[(String, u32)] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<u32> {
        self.generators.iter().find(|(n, _)| n == name).map(|(_, i)| *i)
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Evaluates a word in named generators.
    pub fn evaluate_word(&self, word: &[(String, i32)]) -> Result<u32, CoxeterError> {
        let mut acc = 0;
        for (name, e) in word {
            let g = self.generator(name).ok_or_else(|| CoxeterError::Invalid(format!("unknown generator {name}")))?;
            acc = self.mul(acc, self.pow(g, *e));
        }
        Ok(acc)
    }

    /// Evaluates every defining relation as an exact matrix product.
    pub fn verify_presentation(&self) -> Vec<RelationCheck> {
        self.relations
            .iter()
            .map(|rel| {
                let mut m = Mat::identity(self.dim);
                let mut ok = true;
                for (name, e) in &rel.word {
                    match self.generator(name) {
                        Some(g) => {
                            let gm = if *e < 0 { self.matrix(self.inv(g)) } else { self.matrix(g) };
                            m = m.mul(&gm.pow(e.unsigned_abs()));
                        }
                        None => ok = false,
                    }
                }
                RelationCheck { name: rel.name.clone(), holds: ok && m.is_identity() }
            })
            .collect()
    }
}

fn dihedral_relations(m: i32) -> Vec<Relation> {
    let w = |name: &str, e: i32| (name.to_string(), e);
    vec![
        Relation { name: format!("a^{m}"), word: vec![w("a", m)] },
        Relation { name: "b^2".into(), word: vec![w("b", 2)] },
        Relation { name: "b a b^-1 a".into(), word: vec![w("b", 1), w("a", 1), w("b", -1), w("a", 1)] },
    ]
}
