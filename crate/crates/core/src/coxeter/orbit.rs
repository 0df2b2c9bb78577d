use std::collections::VecDeque;

use super::group::CoxeterGroup;
use super::linalg::Vector;
use super::CoxeterError;

/// A W-orbit {μ_1, …, μ_M} with the induced permutation action.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub base_point: Vector,
    pub points: Vec<Vector>,
    /// `action[w][i] = j` iff w(μ_i) = μ_j.
    action: Vec<Vec<u32>>,
}

impl Orbit {
    /// BFS from μ over the group's BFS generators, or the explicit ordering if given.
    pub fn new(group: &CoxeterGroup, mu: &[crate::scalars::Cyc], order: Option<Vec<Vector>>) -> Result<Self, CoxeterError> {
        let mu: Vector = mu.to_vec();
        let points = match order {
            Some(pts) => {
                let bfs = Self::bfs(group, &mu);
                let same = pts.len() == bfs.len() && bfs.iter().all(|p| pts.contains(p));
                if !same {
                    return Err(CoxeterError::Invalid("orbit ordering override is not the orbit".into()));
                }
                pts
            }
            None => Self::bfs(group, &mu),
        };
        let mut action = Vec::with_capacity(group.order());
        for e in group.elements() {
            let perm = points
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let img = e.matrix.apply(p);
                    points.iter().position(|q| *q == img).map(|j| j as u32).ok_or(CoxeterError::PointNotInOrbit(i))
                })
                .collect::<Result<Vec<_>, _>>()?;
            action.push(perm);
        }
        Ok(Orbit { base_point: mu, points, action })
    }

    fn bfs(group: &CoxeterGroup, mu: &Vector) -> Vec<Vector> {
        let mut points = vec![mu.clone()];
        let mut queue = VecDeque::from([0usize]);
        let gens: Vec<u32> = match &group.root_system {
            Some(rs) => rs.simple.iter().map(|&i| group.reflection(i)).collect(),
            None => group.generators().iter().map(|g| g.1).collect(),
        };
        while let Some(cur) = queue.pop_front() {
            for &g in &gens {
                let img = group.matrix(g).apply(&points[cur]);
                if !points.contains(&img) {
                    queue.push_back(points.len());
                    points.push(img);
                }
            }
        }
        points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// w̌ as a permutation of orbit indices (0-based).
    pub fn induced_permutation(&self, w: u32) -> &[u32] {
        &self.action[w as usize]
    }
}
