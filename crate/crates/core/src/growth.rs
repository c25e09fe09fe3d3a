//! Growing a web inward from typed boundary data, and reading the data back
//! off a finished web through minimal cut paths.
//!
//! `grow` consumes a sign string and a state string pairwise: equally
//! oriented neighbors merge at a trivalent vertex, oppositely oriented
//! neighbors either pass through an `h` piece or close with a turnback.
//! Rewriting stops when no adjacent pair matches a rule; whatever suffix
//! survives becomes the lower boundary of the web. The rewriting is
//! confluent, so the resulting map does not depend on the rule order.
//!
//! `min_cut_states` inverts the construction for webs that grew to
//! completion: a transverse path from the base gap to the gap after
//! boundary point `k` crossing as few strands as possible has a
//! well-defined weight, and consecutive weight differences name the state
//! at each boundary point.

use std::collections::VecDeque;

use rand::Rng;

use crate::quantum::{weight, Sign, SignString, State, StateString, WeightVec};
use crate::web::{SliceGen, Web, WebMap};

/// A frontier strand: orientation sign plus current state.
pub(crate) type Strand = (Sign, State);

/// Output of `grow`: the web plus the unconsumed boundary suffix. The
/// residual strings are empty exactly when the input is a dominant path.
#[derive(Clone)]
pub struct Growth {
    pub web: Web,
    pub residual_signs: SignString,
    pub residual_states: StateString,
}

/// One rewrite of an adjacent frontier pair.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Rewrite {
    /// Two-in two-out piece on a mixed pair: the signs swap and the states
    /// become the recorded pair.
    Bar(State, State),
    /// Turnback on a mixed `(1, -1)` pair: both strands disappear.
    Turn,
    /// Trivalent vertex on an equal pair: one strand of the flipped sign
    /// and the recorded state remains.
    Merge(State),
}

/// The rewrite applicable to `frontier[i], frontier[i + 1]`, if any.
///
/// Mixed orientations admit four rewrites and equal orientations three;
/// counting the two sign arrangements separately gives fourteen rules.
pub(crate) fn rule_at(frontier: &[Strand], i: usize) -> Option<Rewrite> {
    let (sa, a) = frontier[i];
    let (sb, b) = frontier[i + 1];
    if sa != sb {
        match (a, b) {
            (1, 0) => Some(Rewrite::Bar(0, 1)),
            (0, 0) => Some(Rewrite::Bar(-1, 1)),
            (0, -1) => Some(Rewrite::Bar(-1, 0)),
            (1, -1) => Some(Rewrite::Turn),
            _ => None,
        }
    } else {
        match (a, b) {
            (1, 0) => Some(Rewrite::Merge(1)),
            (0, -1) => Some(Rewrite::Merge(-1)),
            (1, -1) => Some(Rewrite::Merge(0)),
            _ => None,
        }
    }
}

/// One applied rewrite, recorded so the finished layers can be assembled
/// once the loop ends.
pub(crate) struct Step {
    pos: usize,
    gen: SliceGen,
    /// Frontier signs right after the rewrite: the slots below the layer.
    below: Vec<Sign>,
}

/// Apply the rule at `pos` and record the layer data. Panics when no rule
/// applies there.
pub(crate) fn apply_at(frontier: &mut Vec<Strand>, pos: usize) -> Step {
    let rewrite = rule_at(frontier, pos).expect("no rule applies at this position");
    let (sa, _) = frontier[pos];
    let gen = match rewrite {
        Rewrite::Bar(c, d) => {
            let (sb, _) = frontier[pos + 1];
            frontier[pos] = (sb, c);
            frontier[pos + 1] = (sa, d);
            SliceGen::H(sa)
        }
        Rewrite::Turn => {
            frontier.drain(pos..pos + 2);
            SliceGen::Cup(sa)
        }
        Rewrite::Merge(j) => {
            frontier.remove(pos + 1);
            frontier[pos] = (sa.flip(), j);
            SliceGen::Split(sa)
        }
    };
    Step {
        pos,
        gen,
        below: frontier.iter().map(|&(s, _)| s).collect(),
    }
}

fn grow_impl(
    signs: &SignString,
    states: &StateString,
    mut pick: impl FnMut(&[Strand]) -> Option<usize>,
) -> Result<Growth, String> {
    if signs.len() != states.len() {
        return Err(format!(
            "sign and state strings differ in length: {} vs {}",
            signs.len(),
            states.len()
        ));
    }
    let mut frontier: Vec<Strand> = signs.iter().zip(states.0.iter().copied()).collect();
    let mut steps: Vec<Step> = Vec::new();
    // every rewrite lowers (length, position-weighted state sum), so this
    // bound is never reached; it guards against a broken pick closure
    let cap = 64 + 4 * frontier.len().pow(3);
    while let Some(pos) = pick(&frontier) {
        steps.push(apply_at(&mut frontier, pos));
        if steps.len() > cap {
            return Err("frontier rewriting failed to terminate".into());
        }
    }
    let residual_signs = SignString(frontier.iter().map(|&(s, _)| s).collect());
    let residual_states = StateString(frontier.iter().map(|&(_, j)| j).collect());
    // the first rewrite touched the boundary, so its layer sits on top
    let mut layers: Vec<Vec<SliceGen>> = Vec::with_capacity(steps.len());
    for step in steps.iter().rev() {
        let mut row: Vec<SliceGen> = Vec::with_capacity(step.below.len() + 1);
        row.extend(step.below[..step.pos].iter().map(|&s| SliceGen::Id(s)));
        row.push(step.gen);
        row.extend(
            step.below[step.pos + step.gen.arity_below()..]
                .iter()
                .map(|&s| SliceGen::Id(s)),
        );
        layers.push(row);
    }
    let web = Web::new(residual_signs.clone(), layers)?;
    debug_assert_eq!(web.top_signs(), signs);
    Ok(Growth {
        web,
        residual_signs,
        residual_states,
    })
}

/// Grow a web from boundary data, always rewriting the leftmost applicable
/// pair.
pub fn grow(signs: &SignString, states: &StateString) -> Result<Growth, String> {
    grow_impl(signs, states, |f| {
        (0..f.len().saturating_sub(1)).find(|&i| rule_at(f, i).is_some())
    })
}

/// Grow with rewrite positions chosen by `rng`. The slice word may differ
/// from the one `grow` builds, but the underlying map never does.
pub fn grow_with_order<R: Rng>(
    signs: &SignString,
    states: &StateString,
    rng: &mut R,
) -> Result<Growth, String> {
    grow_impl(signs, states, |f| {
        let open: Vec<usize> = (0..f.len().saturating_sub(1))
            .filter(|&i| rule_at(f, i).is_some())
            .collect();
        open.choose(rng).copied()
    })
}

use rand::seq::SliceRandom;

/// Recover the state string of a fully grown web from its minimal cut
/// paths. Requires an empty lower boundary.
pub fn min_cut_states(web: &Web) -> Result<StateString, String> {
    min_cut_states_map(&web.to_map()?)
}

/// Map-level version of `min_cut_states`, for webs already in map form.
pub fn min_cut_states_map(map: &WebMap) -> Result<StateString, String> {
    let n = map.n_boundary();
    if n == 0 {
        return Ok(StateString(vec![]));
    }
    let fd = map.faces();
    // dual adjacency across strands; boundary arcs are never crossed, which
    // keeps every path inside the disk
    let mut adj: Vec<Vec<(usize, WeightVec)>> = vec![Vec::new(); fd.faces.len()];
    for e in map.live_edges() {
        let (l, r) = map.edge_sides(e, &fd);
        adj[l].push((r, WeightVec { a: 1, b: 0 }));
        adj[r].push((l, WeightVec { a: 0, b: 1 }));
    }
    // breadth-first search finds one minimal path per face; all minimal
    // paths to a face carry the same weight, so the choice is immaterial
    let start = fd.p_face.expect("boundary is nonempty");
    let mut pi: Vec<Option<WeightVec>> = vec![None; fd.faces.len()];
    pi[start] = Some(WeightVec::ZERO);
    let mut queue = VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        let w = pi[f].unwrap();
        for &(g, step) in &adj[f] {
            if pi[g].is_none() {
                pi[g] = Some(w.add(step));
                queue.push_back(g);
            }
        }
    }
    let mut gap_weights: Vec<WeightVec> = Vec::with_capacity(n);
    for k in 0..n - 1 {
        gap_weights.push(pi[fd.q_faces[k]].ok_or("gap face unreachable inside the disk")?);
    }
    // the last gap is the base gap again, so the walk closes at zero
    gap_weights.push(WeightVec::ZERO);
    let mut states = Vec::with_capacity(n);
    let mut prev = WeightVec::ZERO;
    for (k, s) in map.boundary_signs().iter().enumerate() {
        let delta = WeightVec {
            a: gap_weights[k].a - prev.a,
            b: gap_weights[k].b - prev.b,
        };
        let j = [1, 0, -1]
            .into_iter()
            .find(|&j| weight(s, j) == delta)
            .ok_or_else(|| {
                format!(
                    "cut weight steps by ({}, {}) at point {k}, which no state matches",
                    delta.a, delta.b
                )
            })?;
        states.push(j);
        prev = gap_weights[k];
    }
    Ok(StateString(states))
}
