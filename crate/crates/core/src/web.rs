//! Planar webs as slice words, and their exact state-sum evaluation.
//!
//! A web is stored as a word of horizontal layers read bottom to top. Each
//! layer is a row of generators: through-strands, turnbacks (`cup`/`cap`),
//! trivalent vertices (`split`/`join`), and the two-in-two-out `h` piece
//! (two trivalent vertices sharing a horizontal edge). Strand orientations
//! are tracked as one sign per slot: `+` means the strand points up toward
//! the top boundary. Trivalent vertices are sources or sinks (all edges in
//! or all out), which pins every generator's sign pattern up to one choice.
//!
//! Evaluation pushes a sparse state distribution through the layers. Every
//! generator contributes a monomial weight per local state transition, and
//! the tables are independent of the orientation signs, so states are plain
//! `-1/0/1` per slot.

pub(crate) mod map;

pub use map::{Att, Face, FaceData, WebMap};

use std::collections::HashMap;
use std::fmt;

use crate::laurent::Laurent;
use crate::quantum::{Sign, SignString, StateString, TensorVector};

/// One generator instance inside a layer.
///
/// The sign parameter fixes the orientation pattern:
///
/// * `Id(s)`: a strand of sign `s` passing through.
/// * `Cup(s)`: no inputs, two outputs signed `(s, -s)`.
/// * `Cap(s)`: two inputs signed `(s, -s)`, no outputs.
/// * `Split(s)`: one input signed `-s`, two outputs `(s, s)`.
/// * `Join(s)`: two inputs signed `(-s, -s)`, one output `s`.
/// * `H(s)`: two inputs signed `(-s, s)`, two outputs `(s, -s)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SliceGen {
    Id(Sign),
    Cup(Sign),
    Cap(Sign),
    Split(Sign),
    Join(Sign),
    H(Sign),
}

impl SliceGen {
    pub fn arity_below(self) -> usize {
        match self {
            SliceGen::Cup(_) => 0,
            SliceGen::Id(_) | SliceGen::Split(_) => 1,
            SliceGen::Cap(_) | SliceGen::Join(_) | SliceGen::H(_) => 2,
        }
    }

    pub fn arity_above(self) -> usize {
        match self {
            SliceGen::Cap(_) => 0,
            SliceGen::Id(_) | SliceGen::Join(_) => 1,
            SliceGen::Cup(_) | SliceGen::Split(_) | SliceGen::H(_) => 2,
        }
    }

    pub fn signs_below(self) -> Vec<Sign> {
        match self {
            SliceGen::Cup(_) => vec![],
            SliceGen::Id(s) => vec![s],
            SliceGen::Split(s) => vec![s.flip()],
            SliceGen::Cap(s) => vec![s, s.flip()],
            SliceGen::Join(s) => vec![s.flip(), s.flip()],
            SliceGen::H(s) => vec![s.flip(), s],
        }
    }

    pub fn signs_above(self) -> Vec<Sign> {
        match self {
            SliceGen::Cap(_) => vec![],
            SliceGen::Id(s) => vec![s],
            SliceGen::Join(s) => vec![s],
            SliceGen::Cup(s) => vec![s, s.flip()],
            SliceGen::Split(s) => vec![s, s],
            SliceGen::H(s) => vec![s, s.flip()],
        }
    }

    /// Token in the text format, e.g. `split:++` or `cap:-+`.
    pub fn token(self) -> String {
        let tag = match self {
            SliceGen::Id(_) => "id",
            SliceGen::Cup(_) => "cup",
            SliceGen::Cap(_) => "cap",
            SliceGen::Split(_) => "split",
            SliceGen::Join(_) => "join",
            SliceGen::H(_) => "h",
        };
        // caps show their input signs, everything else its output signs
        let shown: Vec<Sign> = match self {
            SliceGen::Cap(_) => self.signs_below(),
            _ => self.signs_above(),
        };
        let signs: String = shown.iter().map(|s| s.as_char()).collect();
        format!("{tag}:{signs}")
    }

    pub fn from_token(tok: &str) -> Result<SliceGen, String> {
        let (tag, signs) = tok
            .split_once(':')
            .ok_or_else(|| format!("malformed token {tok:?}, expected tag:signs"))?;
        let signs: Vec<Sign> = signs
            .chars()
            .map(Sign::from_char)
            .collect::<Result<_, _>>()?;
        let bad = || format!("token {tok:?} has an invalid sign pattern");
        match (tag, signs.as_slice()) {
            ("id", [s]) => Ok(SliceGen::Id(*s)),
            ("cup", [s, t]) if *t == s.flip() => Ok(SliceGen::Cup(*s)),
            ("cap", [s, t]) if *t == s.flip() => Ok(SliceGen::Cap(*s)),
            ("split", [s, t]) if t == s => Ok(SliceGen::Split(*s)),
            ("join", [s]) => Ok(SliceGen::Join(*s)),
            ("h", [s, t]) if *t == s.flip() => Ok(SliceGen::H(*s)),
            ("id" | "cup" | "cap" | "split" | "join" | "h", _) => Err(bad()),
            _ => Err(format!("unknown generator tag {tag:?}")),
        }
    }
}

/// A planar web between a lower and an upper boundary.
///
/// `bottom` is empty for honest invariant webs; a nonempty bottom makes this
/// a diagram of a homomorphism from the tensor space typed by `bottom`.
#[derive(Clone, PartialEq, Eq)]
pub struct Web {
    bottom: SignString,
    layers: Vec<Vec<SliceGen>>,
    /// Cross-section signs per level: `sections[0] = bottom`,
    /// `sections[layers.len()] = top`.
    sections: Vec<SignString>,
}

impl Web {
    pub fn new(bottom: SignString, layers: Vec<Vec<SliceGen>>) -> Result<Web, String> {
        let mut sections = vec![bottom.clone()];
        for (li, layer) in layers.iter().enumerate() {
            let below: Vec<Sign> = sections.last().unwrap().0.clone();
            let mut expect = below.into_iter();
            let mut above = Vec::new();
            for (gi, g) in layer.iter().enumerate() {
                for want in g.signs_below() {
                    match expect.next() {
                        Some(have) if have == want => {}
                        Some(have) => {
                            return Err(format!(
                                "layer {li} generator {gi} ({}) expects {} below but the strand is {}",
                                g.token(),
                                want.as_char(),
                                have.as_char()
                            ));
                        }
                        None => {
                            return Err(format!(
                                "layer {li} is wider than the cross-section below it"
                            ));
                        }
                    }
                }
                above.extend(g.signs_above());
            }
            if expect.next().is_some() {
                return Err(format!("layer {li} leaves strands unconsumed"));
            }
            sections.push(SignString(above));
        }
        Ok(Web {
            bottom,
            layers,
            sections,
        })
    }

    /// The empty web (no strands at all).
    pub fn empty() -> Web {
        Web::new(SignString::default(), vec![]).unwrap()
    }

    pub fn bottom_signs(&self) -> &SignString {
        &self.sections[0]
    }

    pub fn top_signs(&self) -> &SignString {
        self.sections.last().unwrap()
    }

    pub fn layers(&self) -> &[Vec<SliceGen>] {
        &self.layers
    }

    pub fn section(&self, level: usize) -> &SignString {
        &self.sections[level]
    }

    /// Number of internal trivalent vertices (`h` counts as two).
    pub fn vertex_count(&self) -> usize {
        self.layers
            .iter()
            .flatten()
            .map(|g| match g {
                SliceGen::Split(_) | SliceGen::Join(_) => 1,
                SliceGen::H(_) => 2,
                _ => 0,
            })
            .sum()
    }

    /// Text form: one layer per line, bottom to top; a nonempty lower
    /// boundary gets a `bottom:` header line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.bottom.is_empty() {
            out.push_str(&format!("bottom:{}\n", self.bottom));
        }
        for layer in &self.layers {
            let toks: Vec<String> = layer.iter().map(|g| g.token()).collect();
            out.push_str(&toks.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Web, String> {
        let mut bottom = SignString::default();
        let mut layers = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("bottom:") {
                if i != 0 && !layers.is_empty() {
                    return Err("bottom: header must come first".into());
                }
                bottom = rest.trim().parse()?;
                continue;
            }
            let layer: Vec<SliceGen> = line
                .split_whitespace()
                .map(SliceGen::from_token)
                .collect::<Result<_, _>>()
                .map_err(|e| format!("line {}: {e}", i + 1))?;
            layers.push(layer);
        }
        Web::new(bottom, layers)
    }

    /// The derived combinatorial map; requires an empty lower boundary.
    pub fn to_map(&self) -> Result<WebMap, String> {
        WebMap::from_web(self)
    }
}

impl fmt::Debug for Web {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Web({} -> {})", self.bottom_signs(), self.top_signs())
    }
}

// ---- local weight tables ----------------------------------------------
//
// Each entry is (output states, exponent): the weight is v^exponent with
// coefficient 1. The tables do not depend on the orientation signs.

/// Turnback minimum: outputs (left, right) with weight.
pub fn cup_table() -> [([i8; 2], i32); 3] {
    [([1, -1], 0), ([0, 0], -1), ([-1, 1], -2)]
}

/// Turnback maximum: weight for input pair, if nonzero.
pub fn cap_weight(l: i8, r: i8) -> Option<i32> {
    match (l, r) {
        (-1, 1) => Some(0),
        (0, 0) => Some(1),
        (1, -1) => Some(2),
        _ => None,
    }
}

/// One strand in, two out.
pub fn split_table(j: i8) -> [([i8; 2], i32); 2] {
    match j {
        1 => [([1, 0], 0), ([0, 1], -1)],
        0 => [([1, -1], 0), ([-1, 1], -1)],
        -1 => [([0, -1], 0), ([-1, 0], -1)],
        _ => panic!("state out of range: {j}"),
    }
}

/// Two strands in, one out.
pub fn join_weight(l: i8, r: i8) -> Option<(i8, i32)> {
    match (l, r) {
        (1, 0) => Some((1, 1)),
        (0, 1) => Some((1, 0)),
        (1, -1) => Some((0, 1)),
        (-1, 1) => Some((0, 0)),
        (0, -1) => Some((-1, 1)),
        (-1, 0) => Some((-1, 0)),
        _ => None,
    }
}

/// The two-in-two-out piece, with the state of the internal horizontal edge
/// exposed. Entries are `(bar, top_left, top_right, exponent)`.
pub fn h_table(bl: i8, br: i8) -> Vec<(i8, i8, i8, i32)> {
    // contract split(bl) -> (tl, bar) against join(bar, br) -> tr
    let mut out = Vec::new();
    for ([tl, bar], e1) in split_table(bl) {
        if let Some((tr, e2)) = join_weight(bar, br) {
            out.push((bar, tl, tr, e1 + e2));
        }
    }
    out
}

// ---- evaluation ---------------------------------------------------------

/// Enumerate a layer's transitions from one input state row.
/// Calls `emit(output_row, exponent)` once per nonzero branch.
fn layer_transitions(layer: &[SliceGen], input: &[i8], mut emit: impl FnMut(&[i8], i32)) {
    // iterative product over the generators, left to right
    let mut acc: Vec<(Vec<i8>, i32)> = vec![(Vec::new(), 0)];
    let mut pos = 0;
    for g in layer {
        let ins = &input[pos..pos + g.arity_below()];
        pos += g.arity_below();
        let opts: Vec<(Vec<i8>, i32)> = match g {
            SliceGen::Id(_) => vec![(vec![ins[0]], 0)],
            SliceGen::Cup(_) => cup_table().iter().map(|(o, e)| (o.to_vec(), *e)).collect(),
            SliceGen::Cap(_) => match cap_weight(ins[0], ins[1]) {
                Some(e) => vec![(vec![], e)],
                None => vec![],
            },
            SliceGen::Split(_) => split_table(ins[0])
                .iter()
                .map(|(o, e)| (o.to_vec(), *e))
                .collect(),
            SliceGen::Join(_) => match join_weight(ins[0], ins[1]) {
                Some((j, e)) => vec![(vec![j], e)],
                None => vec![],
            },
            SliceGen::H(_) => h_table(ins[0], ins[1])
                .into_iter()
                .map(|(_, tl, tr, e)| (vec![tl, tr], e))
                .collect(),
        };
        if opts.is_empty() {
            return;
        }
        let mut next = Vec::with_capacity(acc.len() * opts.len());
        for (row, e0) in &acc {
            for (out, e) in &opts {
                let mut r = row.clone();
                r.extend_from_slice(out);
                next.push((r, e0 + e));
            }
        }
        acc = next;
    }
    debug_assert_eq!(pos, input.len());
    for (row, e) in acc {
        emit(&row, e);
    }
}

/// Expand an invariant web (empty lower boundary) in the tensor basis of its
/// top boundary.
pub fn evaluate(web: &Web) -> TensorVector {
    assert!(
        web.bottom_signs().is_empty(),
        "evaluate needs an empty lower boundary; use evaluate_hom"
    );
    let mut states: HashMap<Vec<i8>, Laurent> = HashMap::new();
    states.insert(Vec::new(), Laurent::one());
    for layer in web.layers() {
        let mut next: HashMap<Vec<i8>, Laurent> = HashMap::new();
        for (input, coeff) in &states {
            layer_transitions(layer, input, |out, e| {
                next.entry(out.to_vec())
                    .or_insert_with(Laurent::zero)
                    .add_assign(&coeff.shifted(e));
            });
        }
        next.retain(|_, c| !c.is_zero());
        states = next;
    }
    let mut out = TensorVector::zero(web.top_signs().len());
    for (row, c) in states {
        out.add_term(StateString(row), &c);
    }
    out
}

/// Expand a hom web: matrix entries keyed by (bottom state, top state).
pub fn evaluate_hom(web: &Web) -> std::collections::BTreeMap<(StateString, StateString), Laurent> {
    let m = web.bottom_signs().len();
    let mut out = std::collections::BTreeMap::new();
    for bottom in all_state_rows(m) {
        let mut states: HashMap<Vec<i8>, Laurent> = HashMap::new();
        states.insert(bottom.clone(), Laurent::one());
        for layer in web.layers() {
            let mut next: HashMap<Vec<i8>, Laurent> = HashMap::new();
            for (input, coeff) in &states {
                layer_transitions(layer, input, |row, e| {
                    next.entry(row.to_vec())
                        .or_insert_with(Laurent::zero)
                        .add_assign(&coeff.shifted(e));
                });
            }
            next.retain(|_, c| !c.is_zero());
            states = next;
        }
        for (top, c) in states {
            if !c.is_zero() {
                out.insert((StateString(bottom.clone()), StateString(top)), c);
            }
        }
    }
    out
}

fn all_state_rows(n: usize) -> Vec<Vec<i8>> {
    let mut rows = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(rows.len() * 3);
        for r in rows {
            for j in [-1i8, 0, 1] {
                let mut r2 = r.clone();
                r2.push(j);
                next.push(r2);
            }
        }
        rows = next;
    }
    rows
}

/// A single summand of the state sum: one state per slot of every
/// cross-section, plus the states of the horizontal `h` bars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WebState {
    /// One row per cross-section, bottom to top.
    pub sections: Vec<Vec<i8>>,
    /// States of the internal bar of each `h`, in (layer, slot) order.
    pub bars: Vec<i8>,
    /// Total weight is `v^weight_exp` (all local weights are monomials
    /// with coefficient 1).
    pub weight_exp: i32,
}

impl WebState {
    pub fn bottom(&self) -> &[i8] {
        self.sections.first().unwrap()
    }

    pub fn top(&self) -> &[i8] {
        self.sections.last().unwrap()
    }
}

/// Enumerate every nonzero state of the web. Exponential in branch count;
/// meant for gadgets, tests, and picking flow lines to draw.
pub fn enumerate_states(web: &Web) -> Vec<WebState> {
    let mut out = Vec::new();
    for bottom in all_state_rows(web.bottom_signs().len()) {
        let start = WebState {
            sections: vec![bottom],
            bars: Vec::new(),
            weight_exp: 0,
        };
        let mut stack = vec![(0usize, start)];
        while let Some((li, st)) = stack.pop() {
            if li == web.layers().len() {
                out.push(st);
                continue;
            }
            let layer = &web.layers()[li];
            let input = st.sections.last().unwrap().clone();
            // same product walk as layer_transitions, but tracking bars
            let mut acc = vec![(Vec::new(), Vec::new(), 0i32)];
            let mut pos = 0;
            for g in layer {
                let ins = &input[pos..pos + g.arity_below()];
                pos += g.arity_below();
                let opts: Vec<(Vec<i8>, Option<i8>, i32)> = match g {
                    SliceGen::Id(_) => vec![(vec![ins[0]], None, 0)],
                    SliceGen::Cup(_) => cup_table()
                        .iter()
                        .map(|(o, e)| (o.to_vec(), None, *e))
                        .collect(),
                    SliceGen::Cap(_) => match cap_weight(ins[0], ins[1]) {
                        Some(e) => vec![(vec![], None, e)],
                        None => vec![],
                    },
                    SliceGen::Split(_) => split_table(ins[0])
                        .iter()
                        .map(|(o, e)| (o.to_vec(), None, *e))
                        .collect(),
                    SliceGen::Join(_) => match join_weight(ins[0], ins[1]) {
                        Some((j, e)) => vec![(vec![j], None, e)],
                        None => vec![],
                    },
                    SliceGen::H(_) => h_table(ins[0], ins[1])
                        .into_iter()
                        .map(|(bar, tl, tr, e)| (vec![tl, tr], Some(bar), e))
                        .collect(),
                };
                let mut next = Vec::new();
                for (row, bars, e0) in &acc {
                    for (o, bar, e) in &opts {
                        let mut r = row.clone();
                        r.extend_from_slice(o);
                        let mut b = bars.clone();
                        if let Some(bar) = bar {
                            b.push(*bar);
                        }
                        next.push((r, b, e0 + e));
                    }
                }
                acc = next;
                if acc.is_empty() {
                    break;
                }
            }
            for (row, bars, e) in acc {
                let mut st2 = st.clone();
                st2.sections.push(row);
                st2.bars.extend(bars);
                st2.weight_exp += e;
                stack.push((li + 1, st2));
            }
        }
    }
    out
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::quantum::is_invariant;

    fn web(text: &str) -> Web {
        Web::parse_text(text).unwrap()
    }

    fn lp(pairs: &[(i32, i64)]) -> Laurent {
        Laurent::from_small(pairs.iter().copied())
    }

    fn state(s: &str) -> StateString {
        s.parse().unwrap()
    }

    /// One trivalent vertex with three upward legs.
    fn tripod(plus: bool) -> Web {
        if plus {
            web("cup:-+\nsplit:++ id:+")
        } else {
            web("cup:+-\nsplit:-- id:-")
        }
    }

    /// The running seven-point example: boundary +-+-+++ with expansion
    /// leading at ++00-0-.
    pub(crate) fn seven_point_web() -> Web {
        web("cup:-+\n\
             split:++ id:+\n\
             split:-- id:+ id:+\n\
             id:- split:++ id:+ id:+\n\
             id:- split:-- id:+ id:+ id:+\n\
             split:++ id:- id:- id:+ id:+ id:+\n\
             id:+ h:-+ id:- id:+ id:+ id:+")
    }

    #[test]
    fn slice_words_validate_their_sign_flow() {
        assert!(Web::parse_text("cup:+-").is_ok());
        // cap over the wrong pair
        let err = Web::parse_text("cup:+-\ncap:-+").unwrap_err();
        assert!(err.contains("layer 1"), "unexpected message: {err}");
        // too narrow and too wide layers
        assert!(Web::parse_text("cup:+-\nid:+")
            .unwrap_err()
            .contains("unconsumed"));
        assert!(Web::parse_text("id:+").unwrap_err().contains("wider"));
    }

    #[test]
    fn text_format_round_trips() {
        for w in [
            tripod(true),
            seven_point_web(),
            web("bottom:---\nid:- join:+ \n# comment line\n"),
        ] {
            let again = Web::parse_text(&w.to_text()).unwrap();
            assert!(again == w, "round trip changed the web:\n{}", w.to_text());
        }
    }

    #[test]
    fn h_table_is_tilt_independent() {
        // tilting the crossbar the other way splits on the right input and
        // joins on the left; the bar's state flips with its orientation
        let mut seen = 0;
        for bl in [-1i8, 0, 1] {
            for br in [-1i8, 0, 1] {
                let mut left_first: Vec<(i8, i8, i8, i32)> = h_table(bl, br)
                    .into_iter()
                    .map(|(bar, tl, tr, e)| (-bar, tl, tr, e))
                    .collect();
                let mut right_first = Vec::new();
                for ([bar, tr], e1) in split_table(br) {
                    if let Some((tl, e2)) = join_weight(bl, bar) {
                        right_first.push((bar, tl, tr, e1 + e2));
                    }
                }
                left_first.sort();
                right_first.sort();
                assert_eq!(left_first, right_first, "tilt mismatch at ({bl}, {br})");
                seen += left_first.len();
            }
        }
        assert_eq!(seen, 12, "the crossbar table has twelve entries");
    }

    #[test]
    fn h_table_frozen_entries() {
        let flat: Vec<(i8, i8, i8, i8, i32)> = [-1i8, 0, 1]
            .iter()
            .flat_map(|&bl| {
                [-1i8, 0, 1].iter().flat_map(move |&br| {
                    h_table(bl, br)
                        .into_iter()
                        .map(move |(_, tl, tr, e)| (bl, br, tl, tr, e))
                })
            })
            .collect();
        let expected = vec![
            (-1, -1, -1, -1, 0),
            (-1, 0, 0, -1, 0),
            (-1, 1, 0, 0, 0),
            (-1, 1, -1, 1, -1),
            (0, -1, -1, 0, 0),
            (0, 0, 1, -1, 0),
            (0, 0, -1, 1, 0),
            (0, 1, 1, 0, 0),
            (1, -1, 1, -1, 1),
            (1, -1, 0, 0, 0),
            (1, 0, 0, 1, 0),
            (1, 1, 1, 1, 0),
        ];
        let mut got = flat.clone();
        let mut want = expected.clone();
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn single_arc_expansion() {
        for text in ["cup:+-", "cup:-+"] {
            let w = web(text);
            let v = evaluate(&w);
            assert_eq!(v.entries.len(), 3);
            assert_eq!(v.coeff(&state("+-")), Laurent::one());
            assert_eq!(v.coeff(&state("00")), lp(&[(-1, 1)]));
            assert_eq!(v.coeff(&state("-+")), lp(&[(-2, 1)]));
            assert!(is_invariant(w.top_signs(), &v));
        }
    }

    #[test]
    fn tripod_expansion() {
        for plus in [true, false] {
            let w = tripod(plus);
            let v = evaluate(&w);
            let expected = [
                ("+0-", 0),
                ("0+-", -1),
                ("+-0", -1),
                ("0-+", -2),
                ("-+0", -2),
                ("-0+", -3),
            ];
            assert_eq!(v.entries.len(), expected.len());
            for (j, e) in expected {
                assert_eq!(v.coeff(&state(j)), lp(&[(e, 1)]), "at state {j}");
            }
            assert!(is_invariant(w.top_signs(), &v));
        }
    }

    #[test]
    fn zigzag_words_compose_to_the_identity() {
        let words = [
            "bottom:-\ncup:-+ id:-\nid:- cap:+-",
            "bottom:-\nid:- cup:+-\ncap:-+ id:-",
            "bottom:+\ncup:+- id:+\nid:+ cap:-+",
            "bottom:+\nid:+ cup:-+\ncap:+- id:+",
        ];
        for text in words {
            let hom = evaluate_hom(&web(text));
            assert_eq!(hom.len(), 3, "{text}");
            for j in [-1i8, 0, 1] {
                let key = (StateString(vec![j]), StateString(vec![j]));
                assert_eq!(hom.get(&key), Some(&Laurent::one()), "{text} at {j}");
            }
        }
    }

    #[test]
    fn square_relation() {
        let square = crate::web::map::tests::square_web();
        let nested = web("cup:+-\nid:+ cup:-+ id:-");
        let adjacent = web("cup:+- cup:+-");
        let lhs = evaluate(&square);
        let rhs = evaluate(&nested).add(&evaluate(&adjacent));
        assert!(lhs == rhs, "square relation failed:\n{lhs:?}\nvs\n{rhs:?}");
    }

    #[test]
    fn seven_point_expansion_leading_and_sample_coefficients() {
        let w = seven_point_web();
        assert_eq!(w.top_signs().to_string(), "+-+-+++");
        assert_eq!(w.vertex_count(), 7);
        let v = evaluate(&w);
        // two states meet this boundary: the circulation around the hexagon
        // runs one way or the other
        assert_eq!(v.coeff(&state("00000+-")), lp(&[(-2, 1), (-4, 1)]));
        assert_eq!(v.coeff(&state("++00-0-")), Laurent::one());
        assert!(is_invariant(w.top_signs(), &v));
        // every coefficient lands in N[v, v^-1]
        for (j, c) in &v.entries {
            assert!(
                c.iter().all(|(_, n)| n.sign() != num_bigint::Sign::Minus),
                "negative coefficient at {j}: {c}"
            );
        }
    }

    #[test]
    fn seven_point_map_fingerprint() {
        let m = seven_point_web().to_map().unwrap();
        assert_eq!(m.vertex_count(), 7);
        assert_eq!(m.edge_count(), 14);
        let sizes: Vec<usize> = m.internal_faces().iter().map(|f| f.len).collect();
        assert_eq!(sizes, vec![6]);
        assert!(m.is_non_elliptic());
    }

    #[test]
    fn enumeration_agrees_with_the_transfer_sum() {
        for w in [
            tripod(true),
            seven_point_web(),
            crate::web::map::tests::square_web(),
        ] {
            let mut rebuilt = TensorVector::zero(w.top_signs().len());
            for st in enumerate_states(&w) {
                rebuilt.add_term(StateString(st.top().to_vec()), &lp(&[(st.weight_exp, 1)]));
            }
            assert!(rebuilt == evaluate(&w), "state enumeration disagrees");
        }
    }

    #[test]
    fn enumeration_agrees_on_hom_webs() {
        let w = web("bottom:-\ncup:-+ id:-\nid:- cap:+-");
        let mut rebuilt: std::collections::BTreeMap<(StateString, StateString), Laurent> =
            Default::default();
        for st in enumerate_states(&w) {
            let key = (
                StateString(st.bottom().to_vec()),
                StateString(st.top().to_vec()),
            );
            let c = rebuilt.entry(key).or_insert_with(Laurent::zero);
            c.add_assign(&lp(&[(st.weight_exp, 1)]));
        }
        rebuilt.retain(|_, c| !c.is_zero());
        assert_eq!(rebuilt, evaluate_hom(&w));
    }

    #[test]
    fn branch_gadget_census() {
        // a single upward branching, either typing
        for text in ["bottom:-\nsplit:++", "bottom:+\nsplit:--"] {
            let states = enumerate_states(&web(text));
            assert_eq!(states.len(), 6);
            let flat = states.iter().filter(|s| s.weight_exp == 0).count();
            let low = states.iter().filter(|s| s.weight_exp == -1).count();
            assert_eq!((flat, low), (3, 3));
        }
    }

    #[test]
    fn double_branch_gadget_census() {
        // two branchings whose inner legs merge: five edges, three vertices
        let w = web("bottom:++\nsplit:-- id:+\nid:- id:- split:--\nid:- join:+ id:-");
        let states = enumerate_states(&w);
        assert!(
            states.iter().all(|s| s.weight_exp <= 0),
            "positive exponent found"
        );
        let mut flat_bottoms: Vec<Vec<i8>> = states
            .iter()
            .filter(|s| s.weight_exp == 0)
            .map(|s| s.bottom().to_vec())
            .collect();
        assert_eq!(flat_bottoms.len(), 12);
        flat_bottoms.sort();
        // all nine bottom pairs occur; three of them twice
        let mut expected: Vec<Vec<i8>> = Vec::new();
        for a in [-1i8, 0, 1] {
            for b in [-1i8, 0, 1] {
                expected.push(vec![a, b]);
            }
        }
        expected.extend([vec![1, 0], vec![1, -1], vec![0, -1]]);
        expected.sort();
        assert_eq!(flat_bottoms, expected);
    }

    #[test]
    fn hexagon_circulation_weights() {
        // a six-cycle of vertices with six outward legs; with all legs in
        // state 0 the two circulating flows weigh v and 1/v
        let w = web(
            "bottom:-+-\nid:- split:-- id:-\njoin:+ join:+\nsplit:-- split:--\nid:- join:+ id:-",
        );
        let mut exps: Vec<i32> = enumerate_states(&w)
            .iter()
            .filter(|s| s.bottom().iter().all(|&j| j == 0) && s.top().iter().all(|&j| j == 0))
            .map(|s| s.weight_exp)
            .collect();
        exps.sort();
        assert_eq!(exps, vec![-1, 1]);
    }
}
