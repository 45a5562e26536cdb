use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::WeightedAutomaton;

/// Growth class of the number of accepting runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ambiguity {
    /// At most one initial state and at most one successor per state.
    Deterministic,
    /// At most `k` accepting runs of every length, and exactly `k` for some length.
    FinitelyAmbiguous(usize),
    /// Run counts grow like `n^degree`.
    PolynomiallyAmbiguous(usize),
    ExponentiallyAmbiguous,
}

impl Ambiguity {
    /// Degree of the polynomial bound on run counts, if any.
    pub fn degree(&self) -> Option<usize> {
        match self {
            Ambiguity::Deterministic | Ambiguity::FinitelyAmbiguous(_) => Some(0),
            Ambiguity::PolynomiallyAmbiguous(d) => Some(*d),
            Ambiguity::ExponentiallyAmbiguous => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Ambiguity::Deterministic => "deterministic".into(),
            Ambiguity::FinitelyAmbiguous(k) => format!("finitely ambiguous, k = {k}"),
            Ambiguity::PolynomiallyAmbiguous(d) => {
                format!("polynomially ambiguous, degree {d}")
            }
            Ambiguity::ExponentiallyAmbiguous => "exponentially ambiguous".into(),
        }
    }
}

impl fmt::Display for Ambiguity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Structural evidence for a classification, in the original state numbering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    None,
    /// A state on two distinct cycles.
    TwoCycles(usize),
    /// The cycles met along an initial-to-final path with the most cycles.
    CyclePath(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbiguityReport {
    pub class: Ambiguity,
    pub witness: Witness,
}

/// Strongly connected components of the trimmed support graph.
pub(crate) struct SccInfo {
    /// Useful states in original numbering.
    pub states: Vec<usize>,
    /// Component of each useful state (index into `states`).
    pub comp: Vec<usize>,
    /// Components, topologically ordered (sources first), as indices into `states`.
    pub comps: Vec<Vec<usize>>,
    /// Trimmed automaton.
    pub trimmed: WeightedAutomaton,
}

impl SccInfo {
    pub fn new(a: &WeightedAutomaton) -> Self {
        let states = a.useful_states();
        let trimmed = a.restrict(&states);
        let n = states.len();
        let mut g = DiGraph::<(), ()>::with_capacity(n, 0);
        let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
        for (p, q, _) in trimmed.transitions() {
            g.add_edge(nodes[p], nodes[q], ());
        }
        // tarjan_scc yields components in reverse topological order
        let mut comps: Vec<Vec<usize>> = tarjan_scc(&g)
            .into_iter()
            .map(|c| {
                let mut v: Vec<usize> = c.into_iter().map(|x| x.index()).collect();
                v.sort_unstable();
                v
            })
            .collect();
        comps.reverse();
        let mut comp = vec![0; n];
        for (ci, c) in comps.iter().enumerate() {
            for &q in c {
                comp[q] = ci;
            }
        }
        SccInfo {
            states,
            comp,
            comps,
            trimmed,
        }
    }

    /// Number of edges inside component `c`.
    pub fn internal_edges(&self, c: usize) -> usize {
        self.comps[c]
            .iter()
            .map(|&p| {
                self.trimmed
                    .successors(p)
                    .into_iter()
                    .filter(|&q| self.comp[q] == c)
                    .count()
            })
            .sum()
    }

    /// A state with two internal out-edges in some component, if any
    /// component is more than a simple cycle.
    pub fn two_cycle_state(&self) -> Option<usize> {
        for (ci, c) in self.comps.iter().enumerate() {
            if self.internal_edges(ci) > c.len() {
                return c.iter().copied().find(|&p| {
                    self.trimmed
                        .successors(p)
                        .into_iter()
                        .filter(|&q| self.comp[q] == ci)
                        .count()
                        >= 2
                });
            }
        }
        None
    }

    pub fn is_cycle(&self, c: usize) -> bool {
        self.internal_edges(c) > 0
    }

    /// The cycle through state `q` in component order: `q = c_0 -> c_1 -> ... -> c_{l-1} -> q`.
    /// Only meaningful when the component of `q` is a simple cycle.
    pub fn cycle_from(&self, q: usize) -> Vec<usize> {
        let c = self.comp[q];
        let mut out = vec![q];
        let mut cur = q;
        loop {
            let next = self
                .trimmed
                .successors(cur)
                .into_iter()
                .find(|&s| self.comp[s] == c)
                .expect("cycle component");
            if next == q {
                return out;
            }
            out.push(next);
            cur = next;
        }
    }
}

impl WeightedAutomaton {
    /// Classifies the growth of the ambiguity function on the trimmed
    /// support graph.
    pub fn classify_ambiguity(&self) -> AmbiguityReport {
        let info = SccInfo::new(self);
        let t = &info.trimmed;
        let n = t.n_states();
        if n == 0 {
            return AmbiguityReport {
                class: Ambiguity::Deterministic,
                witness: Witness::None,
            };
        }
        if let Some(q) = info.two_cycle_state() {
            return AmbiguityReport {
                class: Ambiguity::ExponentiallyAmbiguous,
                witness: Witness::TwoCycles(info.states[q]),
            };
        }
        let deterministic =
            t.initial_states().len() <= 1 && (0..n).all(|p| t.successors(p).len() <= 1);

        // longest initial-to-final path in the condensation, counting cycle components
        let k = info.comps.len();
        let weight: Vec<usize> = (0..k).map(|c| usize::from(info.is_cycle(c))).collect();
        let mut best: Vec<Option<(usize, usize)>> = vec![None; k]; // (count, predecessor comp)
        for q in t.initial_states() {
            let c = info.comp[q];
            best[c] = Some((weight[c], usize::MAX));
        }
        for c in 0..k {
            let Some((cnt, _)) = best[c] else { continue };
            for &p in &info.comps[c] {
                for s in t.successors(p) {
                    let d = info.comp[s];
                    if d == c {
                        continue;
                    }
                    let cand = cnt + weight[d];
                    if best[d].is_none_or(|(b, _)| cand > b) {
                        best[d] = Some((cand, c));
                    }
                }
            }
        }
        let (end, max) = t
            .final_states()
            .into_iter()
            .map(|q| info.comp[q])
            .filter_map(|c| best[c].map(|(b, _)| (c, b)))
            .max_by_key(|&(c, b)| (b, std::cmp::Reverse(c)))
            .expect("trimmed automaton has a final state");
        let mut path = Vec::new();
        let mut c = end;
        while c != usize::MAX {
            if info.is_cycle(c) {
                path.push(info.comps[c].iter().map(|&q| info.states[q]).collect());
            }
            c = best[c].expect("on path").1;
        }
        path.reverse();
        let witness = Witness::CyclePath(path);

        if deterministic {
            return AmbiguityReport {
                class: Ambiguity::Deterministic,
                witness,
            };
        }
        if max <= 1 {
            // run counts are periodic past a preamble shorter than |Q|,
            // with period dividing the lcm of the cycle lengths
            let period = (0..k)
                .filter(|&c| info.is_cycle(c))
                .map(|c| info.comps[c].len())
                .fold(1usize, |acc, l| num_integer::lcm(acc, l).min(1 << 20));
            let counts = t.count_runs_upto(n + period);
            let kmax = counts.into_iter().max().unwrap_or_else(BigUint::zero);
            let kmax: usize = kmax.try_into().unwrap_or(usize::MAX);
            return AmbiguityReport {
                class: Ambiguity::FinitelyAmbiguous(kmax),
                witness,
            };
        }
        AmbiguityReport {
            class: Ambiguity::PolynomiallyAmbiguous(max - 1),
            witness,
        }
    }
}
