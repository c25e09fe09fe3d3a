//! Rewriting webs into combinations of non-elliptic webs, and the boundary
//! rotation operator.
//!
//! Three local rewrites generate the whole engine: a free circle is worth
//! `v^2 + 1 + v^-2`, a two-sided face collapses to a strand and contributes
//! `v + v^-1`, and a four-sided face resolves into the two planar pairings
//! of its legs with coefficient one each. Every rewrite lowers the vertex
//! count, so the loop terminates with non-elliptic terms only; since those
//! terms are linearly independent, the normal form does not depend on the
//! face order.

use std::collections::BTreeMap;

use crate::growth::{grow, min_cut_states_map};
use crate::laurent::Laurent;
use crate::web::{Att, Face, Web, WebMap};

/// A formal sum of webs in map form, merged by canonical encoding.
#[derive(Clone, Default)]
pub struct WebCombination {
    terms: BTreeMap<String, (Laurent, WebMap)>,
}

impl WebCombination {
    pub fn zero() -> WebCombination {
        WebCombination::default()
    }

    /// A single web with coefficient one.
    pub fn from_web(web: &Web) -> Result<WebCombination, String> {
        let mut out = WebCombination::zero();
        out.add_term(Laurent::one(), web.to_map()?);
        Ok(out)
    }

    pub fn add_term(&mut self, c: Laurent, m: WebMap) {
        if c.is_zero() {
            return;
        }
        let key = m.canonical_encode();
        let slot = self
            .terms
            .entry(key.clone())
            .or_insert_with(|| (Laurent::zero(), m));
        slot.0.add_assign(&c);
        if slot.0.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Laurent, &WebMap)> {
        self.terms.values().map(|(c, m)| (c, m))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the term with the given canonical encoding.
    pub fn coefficient(&self, code: &str) -> Laurent {
        self.terms
            .get(code)
            .map(|(c, _)| c.clone())
            .unwrap_or_else(Laurent::zero)
    }

    /// Redraw every term as a slice word by growing its recovered states.
    /// Each regrown word is checked against the term's map, so this also
    /// exercises the cut-path inverse on every reduction output.
    pub fn to_webs(&self) -> Result<Vec<(Laurent, Web)>, String> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (code, (c, m)) in &self.terms {
            let states = min_cut_states_map(m)?;
            let g = grow(m.boundary_signs(), &states)?;
            if !g.residual_signs.is_empty() {
                return Err("term states do not grow back to a full web".into());
            }
            let regrown = g.web.to_map()?.canonical_encode();
            if regrown != *code {
                return Err(format!(
                    "regrown web {regrown} disagrees with its map {code}"
                ));
            }
            out.push((c.clone(), g.web));
        }
        Ok(out)
    }
}

/// Reduce every term to non-elliptic form.
pub fn reduce(input: WebCombination) -> WebCombination {
    let mut out = WebCombination::zero();
    for (c, m) in input.terms.into_values() {
        reduce_into(c, m, &mut out);
    }
    out
}

/// Reduce a single web.
pub fn reduce_web(web: &Web) -> Result<WebCombination, String> {
    Ok(reduce(WebCombination::from_web(web)?))
}

fn circle_value() -> Laurent {
    Laurent::quantum_int(3)
}

fn bigon_value() -> Laurent {
    Laurent::from_small([(-1, 1), (1, 1)])
}

fn reduce_into(coeff: Laurent, map: WebMap, out: &mut WebCombination) {
    let mut stack = vec![(coeff, map)];
    while let Some((mut c, mut m)) = stack.pop() {
        if m.free_loops > 0 {
            for _ in 0..m.free_loops {
                c = c.mul(&circle_value());
            }
            m.free_loops = 0;
        }
        // smallest reducible face first; dart ids break ties so the scan is
        // deterministic even when an intermediate term is disconnected
        let fd = m.faces();
        let target: Option<&Face> = fd
            .faces
            .iter()
            .filter(|f| !f.touches_boundary && f.len < 6)
            .min_by_key(|f| (f.len, f.darts.iter().copied().min().unwrap_or(usize::MAX)));
        match target {
            None => out.add_term(c, m),
            Some(f) if f.len == 2 => {
                let darts = [f.darts[0], f.darts[1]];
                collapse_bigon(&mut m, darts);
                stack.push((c.mul(&bigon_value()), m));
            }
            Some(f) if f.len == 4 => {
                let darts = [f.darts[0], f.darts[1], f.darts[2], f.darts[3]];
                let mut other = m.clone();
                resolve_square(&mut m, darts, 0);
                resolve_square(&mut other, darts, 1);
                stack.push((c.clone(), m));
                stack.push((c, other));
            }
            Some(f) => unreachable!("internal face with {} sides", f.len),
        }
    }
}

/// The vertex a dart arrives at. Faces eligible for rewriting never touch
/// the boundary, so the arrival is always a vertex.
fn arrival_vertex(m: &WebMap, dart: usize) -> usize {
    let ends = m.edge_ends(dart / 2);
    match ends[(dart & 1) ^ 1].at {
        Att::V(v, _) => v,
        Att::B(_) => unreachable!("reducible face touches the boundary"),
    }
}

/// The port of `v` not used by either given edge.
fn third_leg(m: &WebMap, v: usize, e1: usize, e2: usize) -> (usize, u8) {
    m.vertex_ports(v)
        .into_iter()
        .find(|&(e, _)| e != e1 && e != e2)
        .expect("vertex has a port off the face")
}

fn collapse_bigon(m: &mut WebMap, darts: [usize; 2]) {
    let (e1, e2) = (darts[0] / 2, darts[1] / 2);
    let u = arrival_vertex(m, darts[0]);
    let v = arrival_vertex(m, darts[1]);
    let a = third_leg(m, u, e1, e2);
    let b = third_leg(m, v, e1, e2);
    m.delete_vertex(u);
    m.delete_vertex(v);
    m.delete_edge(e1);
    m.delete_edge(e2);
    m.splice(a, b);
}

/// Replace a four-sided face by one of its two leg pairings: `shift` 0
/// joins each even-indexed leg to the next leg, `shift` 1 the odd ones.
fn resolve_square(m: &mut WebMap, darts: [usize; 4], shift: usize) {
    let edges: Vec<usize> = darts.iter().map(|d| d / 2).collect();
    let corners: Vec<usize> = darts.iter().map(|&d| arrival_vertex(m, d)).collect();
    let legs: Vec<(usize, u8)> = (0..4)
        .map(|i| third_leg(m, corners[i], edges[i], edges[(i + 1) % 4]))
        .collect();
    for &e in &edges {
        m.delete_edge(e);
    }
    for &v in &corners {
        m.delete_vertex(v);
    }
    splice_pairs(
        m,
        vec![
            (legs[shift], legs[(shift + 1) % 4]),
            (legs[(shift + 2) % 4], legs[(shift + 3) % 4]),
        ],
    );
}

/// Splice several pairs of edge ends, renaming pending ends as earlier
/// splices merge their edges away.
fn splice_pairs(m: &mut WebMap, mut pending: Vec<((usize, u8), (usize, u8))>) {
    while let Some(((ea, sa), (eb, sb))) = pending.pop() {
        m.splice((ea, sa), (eb, sb));
        if ea == eb {
            continue;
        }
        for pair in pending.iter_mut() {
            for end in [&mut pair.0, &mut pair.1] {
                if *end == (ea, sa ^ 1) {
                    *end = (ea, 0);
                } else if *end == (eb, sb ^ 1) {
                    *end = (ea, 1);
                }
            }
        }
    }
}

/// Rotate the boundary one step, moving the first point to the last. On
/// maps this is transport of the base gap, so non-elliptic webs come back
/// unchanged up to relabeling; elliptic ones are reduced afterwards.
pub fn rotate(web: &Web) -> Result<WebCombination, String> {
    let turned = web.to_map()?.rotated();
    let mut combo = WebCombination::zero();
    combo.add_term(Laurent::one(), turned);
    Ok(reduce(combo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{State, StateString, TensorVector};
    use crate::web::evaluate;

    fn web(text: &str) -> Web {
        Web::parse_text(text).unwrap()
    }

    fn lp(pairs: &[(i32, i64)]) -> Laurent {
        Laurent::from_small(pairs.iter().copied())
    }

    fn code(text: &str) -> String {
        web(text).to_map().unwrap().canonical_encode()
    }

    /// Evaluate a combination by redrawing every term.
    fn evaluate_combination(c: &WebCombination, n: usize) -> TensorVector {
        let mut total = TensorVector::zero(n);
        for (coeff, term) in c.to_webs().unwrap() {
            total = total.add(&evaluate(&term).scale(&coeff));
        }
        total
    }

    /// The boundary rotation on tensors: move the first factor to the end
    /// and twist by the state it carries.
    fn twisted_flip(x: &TensorVector) -> TensorVector {
        let mut out = TensorVector::zero(x.n);
        for (j, c) in &x.entries {
            let first: State = j.0[0];
            let mut turned = j.0[1..].to_vec();
            turned.push(first);
            out.add_term(
                StateString(turned),
                &c.mul(&Laurent::monomial(-2 * i32::from(first))),
            );
        }
        out
    }

    #[test]
    fn circles_are_quantum_three() {
        let r = reduce_web(&web("cup:+-\ncap:+-")).unwrap();
        assert_eq!(r.num_terms(), 1);
        assert_eq!(r.coefficient("||o0"), lp(&[(-2, 1), (0, 1), (2, 1)]));

        let two = web("cup:+-\nid:+ cup:+- id:-\nid:+ cap:+- id:-\ncap:+-");
        let r2 = reduce_web(&two).unwrap();
        assert_eq!(r2.num_terms(), 1);
        assert_eq!(
            r2.coefficient("||o0"),
            lp(&[(-4, 1), (-2, 2), (0, 3), (2, 2), (4, 1)])
        );
    }

    #[test]
    fn bigons_collapse_to_a_weighted_strand() {
        let bigon = web("cup:+-\nsplit:-- id:-\nid:- join:+");
        let r = reduce_web(&bigon).unwrap();
        assert_eq!(r.num_terms(), 1);
        assert_eq!(r.coefficient(&code("cup:-+")), lp(&[(-1, 1), (1, 1)]));
        assert_eq!(evaluate_combination(&r, 2), evaluate(&bigon),);
    }

    #[test]
    fn squares_resolve_into_both_pairings() {
        let square = crate::web::map::tests::square_web();
        let r = reduce_web(&square).unwrap();
        assert_eq!(r.num_terms(), 2);
        assert_eq!(r.coefficient(&code("cup:+- cup:+-")), Laurent::one());
        assert_eq!(
            r.coefficient(&code("cup:+-\nid:+ cup:-+ id:-")),
            Laurent::one()
        );
        assert_eq!(evaluate_combination(&r, 4), evaluate(&square));
    }

    #[test]
    fn stacked_rewrites_preserve_evaluation() {
        // the square web with an extra bigon pinched into its first strand
        let mut text = String::new();
        for line in crate::web::map::tests::square_web().to_text().lines() {
            text.push_str(line);
            text.push('\n');
        }
        text.push_str("split:-- id:- id:+ id:-\njoin:+ id:- id:+ id:-\n");
        let w = web(&text);
        let r = reduce_web(&w).unwrap();
        assert_eq!(r.num_terms(), 2);
        let two = lp(&[(-1, 1), (1, 1)]);
        assert_eq!(r.coefficient(&code("cup:+- cup:+-")), two);
        assert_eq!(r.coefficient(&code("cup:+-\nid:+ cup:-+ id:-")), two);
        assert_eq!(evaluate_combination(&r, 4), evaluate(&w));
    }

    #[test]
    fn rotation_turns_an_arc_over() {
        let r = rotate(&web("cup:+-")).unwrap();
        assert_eq!(r.num_terms(), 1);
        assert_eq!(r.coefficient(&code("cup:-+")), Laurent::one());
    }

    #[test]
    fn rotation_matches_the_twisted_flip_on_tensors() {
        for w in [
            web("cup:+-"),
            web("cup:-+\nsplit:++ id:+"),
            crate::web::tests::seven_point_web(),
        ] {
            let r = rotate(&w).unwrap();
            assert_eq!(r.num_terms(), 1, "basis webs rotate to basis webs");
            let turned = evaluate_combination(&r, w.top_signs().len());
            assert_eq!(turned, twisted_flip(&evaluate(&w)));
        }
    }

    #[test]
    fn a_full_turn_is_the_identity() {
        let w = crate::web::tests::seven_point_web();
        let original = w.to_map().unwrap().canonical_encode();
        let mut current = w;
        for _ in 0..7 {
            let r = rotate(&current).unwrap();
            assert_eq!(r.num_terms(), 1);
            let mut webs = r.to_webs().unwrap();
            let (c, next) = webs.pop().unwrap();
            assert_eq!(c, Laurent::one());
            current = next;
        }
        assert_eq!(current.to_map().unwrap().canonical_encode(), original);
    }

    #[test]
    fn rotation_commutes_with_reduction() {
        let bigon = web("cup:+-\nsplit:-- id:-\nid:- join:+");
        let r = rotate(&bigon).unwrap();
        assert_eq!(r.num_terms(), 1);
        assert_eq!(r.coefficient(&code("cup:+-")), lp(&[(-1, 1), (1, 1)]));
    }
}
