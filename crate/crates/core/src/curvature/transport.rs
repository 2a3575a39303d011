//! Exact optimal transport between finitely supported measures.
//!
//! Successive shortest paths on the bipartite support graph, with
//! Bellman-Ford in rational arithmetic. Dual potentials come from shortest
//! distances in the final residual graph and certify optimality.

use num::{Signed, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct Transport {
    pub cost: Rational,
    /// Support points and masses of the source measure.
    pub sources: Vec<(usize, Rational)>,
    pub targets: Vec<(usize, Rational)>,
    /// `(source point, target point, mass)` with positive mass.
    pub plan: Vec<(usize, usize, Rational)>,
    /// Dual variables with `α_i + β_j ≤ c(i, j)`.
    pub source_potential: Vec<Rational>,
    pub target_potential: Vec<Rational>,
}

impl Transport {
    pub fn dual_value(&self) -> Rational {
        let a: Rational = self.sources.iter().zip(&self.source_potential).map(|((_, m), p)| m * p).sum();
        let b: Rational = self.targets.iter().zip(&self.target_potential).map(|((_, m), p)| m * p).sum();
        a + b
    }

    /// Marginals, dual feasibility, complementary slackness and
    /// primal = dual, all exact.
    pub fn certify(&self, dist: impl Fn(usize, usize) -> Rational) -> Result<()> {
        let fail = |m: &str| Err(Error::Internal(format!("transport certificate: {m}")));
        for (i, (u, mass)) in self.sources.iter().enumerate() {
            let out: Rational = self.plan.iter().filter(|p| p.0 == *u).map(|p| p.2.clone()).sum();
            if &out != mass {
                return fail("source marginal");
            }
            for (j, (v, _)) in self.targets.iter().enumerate() {
                let slack = dist(*u, *v) - &self.source_potential[i] - &self.target_potential[j];
                if slack.is_negative() {
                    return fail("dual infeasible");
                }
                let used = self.plan.iter().any(|p| p.0 == *u && p.1 == *v);
                if used && !slack.is_zero() {
                    return fail("complementary slackness");
                }
            }
        }
        for (v, mass) in &self.targets {
            let inn: Rational = self.plan.iter().filter(|p| p.1 == *v).map(|p| p.2.clone()).sum();
            if &inn != mass {
                return fail("target marginal");
            }
        }
        let primal: Rational = self.plan.iter().map(|(u, v, m)| dist(*u, *v) * m).sum();
        if primal != self.cost || self.dual_value() != self.cost {
            return fail("primal and dual values differ");
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let pairs = |v: &[(usize, Rational)], pot: &[Rational]| {
            v.iter()
                .zip(pot)
                .map(|((p, m), q)| json!({"vertex": p, "mass": rational::format(m), "potential": rational::format(q)}))
                .collect::<Vec<_>>()
        };
        json!({
            "kind": "transport",
            "cost": rational::format(&self.cost),
            "plan": self.plan.iter().map(|(u, v, m)| json!({"from": u, "to": v, "mass": rational::format(m)})).collect::<Vec<_>>(),
            "sources": pairs(&self.sources, &self.source_potential),
            "targets": pairs(&self.targets, &self.target_potential),
        })
    }
}

fn clean(mu: &[(usize, Rational)]) -> Result<Vec<(usize, Rational)>> {
    let mut out: Vec<(usize, Rational)> = Vec::new();
    for (v, m) in mu {
        if m.is_negative() {
            return Err(Error::invalid("measures must be nonnegative"));
        }
        if m.is_zero() {
            continue;
        }
        match out.iter_mut().find(|(u, _)| u == v) {
            Some((_, acc)) => *acc += m,
            None => out.push((*v, m.clone())),
        }
    }
    Ok(out)
}

/// `W₁(μ₁, μ₂)` for the cost `dist`, with plan and dual potentials.
pub fn wasserstein_w1(
    mu1: &[(usize, Rational)],
    mu2: &[(usize, Rational)],
    dist: impl Fn(usize, usize) -> Rational,
) -> Result<Transport> {
    let src = clean(mu1)?;
    let dst = clean(mu2)?;
    let total: Rational = src.iter().map(|p| p.1.clone()).sum();
    let total2: Rational = dst.iter().map(|p| p.1.clone()).sum();
    if total != total2 {
        return Err(Error::invalid(format!(
            "mass mismatch: {} vs {}",
            rational::format(&total),
            rational::format(&total2)
        )));
    }
    let (n1, n2) = (src.len(), dst.len());
    let cost: Vec<Vec<Rational>> = src
        .iter()
        .map(|(u, _)| dst.iter().map(|(v, _)| dist(*u, *v)).collect())
        .collect();
    if cost.iter().flatten().any(|c| c.is_negative()) {
        return Err(Error::invalid("transport costs must be nonnegative"));
    }
    let mut flow = vec![vec![Rational::zero(); n2]; n1];
    let mut supply: Vec<Rational> = src.iter().map(|p| p.1.clone()).collect();
    let mut demand: Vec<Rational> = dst.iter().map(|p| p.1.clone()).collect();
    // node k < n1 is a source, n1 + j a target
    loop {
        if supply.iter().all(|s| s.is_zero()) {
            break;
        }
        let starts: Vec<bool> = supply.iter().map(|s| s.is_positive()).collect();
        let (dist_to, pred) = bellman_ford(&cost, &flow, Some(&starts));
        let target = (0..n2)
            .filter(|&j| demand[j].is_positive() && dist_to[n1 + j].is_some())
            .min_by(|&a, &b| dist_to[n1 + a].cmp(&dist_to[n1 + b]))
            .ok_or_else(|| Error::Internal("no augmenting path".into()))?;
        // walk back to the start, collecting the bottleneck
        let mut path = Vec::new();
        let mut node = n1 + target;
        while let Some(p) = pred[node] {
            path.push((p, node));
            node = p;
        }
        let start = node;
        let mut amount = supply[start].clone().min(demand[target].clone());
        for &(a, b) in &path {
            if a >= n1 {
                // backward arc target -> source reduces flow[b][a - n1]
                amount = amount.min(flow[b][a - n1].clone());
            }
        }
        for &(a, b) in &path {
            if a < n1 {
                flow[a][b - n1] += &amount;
            } else {
                flow[b][a - n1] -= &amount;
            }
        }
        supply[start] -= &amount;
        demand[target] -= &amount;
    }
    let (pi, _) = bellman_ford(&cost, &flow, None);
    let pi: Vec<Rational> = pi.into_iter().map(|d| d.expect("all nodes reachable")).collect();
    let mut plan = Vec::new();
    let mut value = Rational::zero();
    for i in 0..n1 {
        for j in 0..n2 {
            if flow[i][j].is_positive() {
                value += &cost[i][j] * &flow[i][j];
                plan.push((src[i].0, dst[j].0, flow[i][j].clone()));
            }
        }
    }
    let t = Transport {
        cost: value,
        source_potential: (0..n1).map(|i| -pi[i].clone()).collect(),
        target_potential: (0..n2).map(|j| pi[n1 + j].clone()).collect(),
        sources: src,
        targets: dst,
        plan,
    };
    t.certify(&dist)?;
    Ok(t)
}

/// Shortest distances in the residual graph. With `starts`, only the flagged
/// sources begin at 0; without, every node does.
fn bellman_ford(
    cost: &[Vec<Rational>],
    flow: &[Vec<Rational>],
    starts: Option<&[bool]>,
) -> (Vec<Option<Rational>>, Vec<Option<usize>>) {
    let n1 = cost.len();
    let n2 = cost.first().map_or(0, Vec::len);
    let n = n1 + n2;
    let mut d: Vec<Option<Rational>> = vec![None; n];
    let mut pred = vec![None; n];
    match starts {
        Some(s) => {
            for i in 0..n1 {
                if s[i] {
                    d[i] = Some(Rational::zero());
                }
            }
        }
        None => d.iter_mut().for_each(|x| *x = Some(Rational::zero())),
    }
    for _ in 0..n {
        let mut changed = false;
        for i in 0..n1 {
            for j in 0..n2 {
                if let Some(di) = d[i].clone() {
                    let cand = di + &cost[i][j];
                    if d[n1 + j].as_ref().is_none_or(|x| &cand < x) {
                        d[n1 + j] = Some(cand);
                        pred[n1 + j] = Some(i);
                        changed = true;
                    }
                }
                if flow[i][j].is_positive() {
                    if let Some(dj) = d[n1 + j].clone() {
                        let cand = dj - &cost[i][j];
                        if d[i].as_ref().is_none_or(|x| &cand < x) {
                            d[i] = Some(cand);
                            pred[i] = Some(n1 + j);
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    (d, pred)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn line(u: usize, v: usize) -> Rational {
        int((u as i64 - v as i64).abs())
    }

    #[test]
    fn identical_measures_cost_nothing() {
        let mu = vec![(0, frac(1, 2)), (3, frac(1, 2))];
        let t = wasserstein_w1(&mu, &mu, line).unwrap();
        assert!(t.cost.is_zero());
        assert_eq!(t.plan.len(), 2);
    }

    #[test]
    fn point_masses() {
        let t = wasserstein_w1(&[(1, int(1))], &[(4, int(1))], line).unwrap();
        assert_eq!(t.cost, int(3));
    }

    #[test]
    fn needs_rerouting() {
        // greedy would ship 1 -> 1 and 0 -> 2; the optimum keeps both short
        let mu1 = vec![(0, frac(1, 2)), (1, frac(1, 2))];
        let mu2 = vec![(1, frac(1, 2)), (2, frac(1, 2))];
        let t = wasserstein_w1(&mu1, &mu2, line).unwrap();
        assert_eq!(t.cost, int(1));
        assert_eq!(t.dual_value(), t.cost);
    }

    #[test]
    fn brute_force_on_small_supports() {
        // three points on a line vs three others, masses in thirds: optimum is
        // the sorted matching
        let mu1 = vec![(0, frac(1, 3)), (5, frac(1, 3)), (2, frac(1, 3))];
        let mu2 = vec![(4, frac(1, 3)), (1, frac(1, 3)), (9, frac(1, 3))];
        let t = wasserstein_w1(&mu1, &mu2, line).unwrap();
        assert_eq!(t.cost, frac(1 + 2 + 4, 3));
    }

    #[test]
    fn mass_mismatch_is_rejected() {
        assert!(wasserstein_w1(&[(0, int(1))], &[(1, frac(1, 2))], line).is_err());
        assert!(wasserstein_w1(&[(0, int(-1))], &[(1, int(-1))], line).is_err());
    }
}
