//! Deterministic SVG pictures of webs.
//!
//! The drawing follows the slice word directly: cross-sections are evenly
//! spaced rows, strands are polylines between them, trivalent vertices are
//! dots, and every segment carries one midpoint arrowhead showing its
//! orientation (upward strands point at the boundary). An optional flow
//! overlay shades every segment whose state is nonzero in the first state
//! compatible with a requested boundary.

use crate::quantum::{Sign, StateString};
use crate::web::{enumerate_states, SliceGen, Web, WebState};

const UNIT: f64 = 40.0;
const BAND: f64 = 40.0;

/// Which way the midpoint arrowhead points along a segment.
#[derive(Clone, Copy)]
enum Arrow {
    /// Toward the endpoint nearer the top boundary.
    Up,
    /// Away from the top boundary.
    Down,
    /// Toward larger x (only the horizontal bar of an `h`).
    Right,
    Left,
}

struct Seg {
    a: (f64, f64),
    b: (f64, f64),
    arrow: Arrow,
    /// State carried by this piece of strand, when a flow is drawn.
    state: Option<i8>,
}

fn arrow_for(sign: Sign) -> Arrow {
    match sign {
        Sign::Plus => Arrow::Up,
        Sign::Minus => Arrow::Down,
    }
}

fn fmt(x: f64) -> String {
    format!("{x:.1}")
}

/// Render the web to a self-contained SVG document. With `flow`, the first
/// state (in section-row order) whose boundary row equals `flow` is chosen
/// and its nonzero segments are shaded; an error is returned when no state
/// of the web meets that boundary.
pub fn render_svg(web: &Web, flow: Option<&StateString>) -> Result<String, String> {
    let levels = web.layers().len() + 1;
    let state: Option<WebState> = match flow {
        None => None,
        Some(j) => {
            if j.len() != web.top_signs().len() {
                return Err(format!(
                    "flow boundary has {} entries but the web has {} boundary points",
                    j.len(),
                    web.top_signs().len()
                ));
            }
            let mut hits: Vec<WebState> = enumerate_states(web)
                .into_iter()
                .filter(|st| st.top() == j.0.as_slice())
                .collect();
            if hits.is_empty() {
                return Err(format!("no state of the web meets the boundary {j}"));
            }
            hits.sort_by(|a, b| (&a.sections, &a.bars).cmp(&(&b.sections, &b.bars)));
            Some(hits.swap_remove(0))
        }
    };

    let max_w = (0..levels).map(|k| web.section(k).len()).max().unwrap_or(0);
    let width = (max_w as f64 + 1.0) * UNIT;
    let height = (levels as f64 + 1.0) * BAND;
    let x_at = |w: usize, i: usize| width / 2.0 + (i as f64 - (w as f64 - 1.0) / 2.0) * UNIT;
    let y_at = |level: usize| height - (level as f64 + 1.0) * BAND;

    let mut segs: Vec<Seg> = Vec::new();
    let mut dots: Vec<(f64, f64)> = Vec::new();
    let mut bar_idx = 0usize;
    for (li, layer) in web.layers().iter().enumerate() {
        let wb = web.section(li).len();
        let wa = web.section(li + 1).len();
        let (yb, ya) = (y_at(li), y_at(li + 1));
        let ym = (ya + yb) / 2.0;
        let below = |i: usize| state.as_ref().map(|st| st.sections[li][i]);
        let above = |i: usize| state.as_ref().map(|st| st.sections[li + 1][i]);
        let (mut bi, mut ai) = (0usize, 0usize);
        for g in layer {
            let xb: Vec<f64> = (0..g.arity_below()).map(|k| x_at(wb, bi + k)).collect();
            let xa: Vec<f64> = (0..g.arity_above()).map(|k| x_at(wa, ai + k)).collect();
            match *g {
                SliceGen::Id(s) => {
                    segs.push(Seg {
                        a: (xb[0], yb),
                        b: (xa[0], ya),
                        arrow: arrow_for(s),
                        state: below(bi),
                    });
                }
                SliceGen::Cup(s) => {
                    let xm = (xa[0] + xa[1]) / 2.0;
                    segs.push(Seg {
                        a: (xm, yb),
                        b: (xa[0], ya),
                        arrow: arrow_for(s),
                        state: above(ai),
                    });
                    segs.push(Seg {
                        a: (xm, yb),
                        b: (xa[1], ya),
                        arrow: arrow_for(s.flip()),
                        state: above(ai + 1),
                    });
                }
                SliceGen::Cap(s) => {
                    let xm = (xb[0] + xb[1]) / 2.0;
                    segs.push(Seg {
                        a: (xb[0], yb),
                        b: (xm, ya),
                        arrow: arrow_for(s),
                        state: below(bi),
                    });
                    segs.push(Seg {
                        a: (xb[1], yb),
                        b: (xm, ya),
                        arrow: arrow_for(s.flip()),
                        state: below(bi + 1),
                    });
                }
                SliceGen::Split(s) => {
                    let xv = (xa[0] + xa[1]) / 2.0;
                    dots.push((xv, ym));
                    segs.push(Seg {
                        a: (xb[0], yb),
                        b: (xv, ym),
                        arrow: arrow_for(s.flip()),
                        state: below(bi),
                    });
                    for k in 0..2 {
                        segs.push(Seg {
                            a: (xv, ym),
                            b: (xa[k], ya),
                            arrow: arrow_for(s),
                            state: above(ai + k),
                        });
                    }
                }
                SliceGen::Join(s) => {
                    let xv = (xb[0] + xb[1]) / 2.0;
                    dots.push((xv, ym));
                    for k in 0..2 {
                        segs.push(Seg {
                            a: (xb[k], yb),
                            b: (xv, ym),
                            arrow: arrow_for(s.flip()),
                            state: below(bi + k),
                        });
                    }
                    segs.push(Seg {
                        a: (xv, ym),
                        b: (xa[0], ya),
                        arrow: arrow_for(s),
                        state: above(ai),
                    });
                }
                SliceGen::H(s) => {
                    let xvl = (xb[0] + xa[0]) / 2.0;
                    let xvr = (xb[1] + xa[1]) / 2.0;
                    dots.push((xvl, ym));
                    dots.push((xvr, ym));
                    let bar = state.as_ref().map(|st| st.bars[bar_idx]);
                    bar_idx += 1;
                    segs.push(Seg {
                        a: (xb[0], yb),
                        b: (xvl, ym),
                        arrow: arrow_for(s.flip()),
                        state: below(bi),
                    });
                    segs.push(Seg {
                        a: (xvl, ym),
                        b: (xa[0], ya),
                        arrow: arrow_for(s),
                        state: above(ai),
                    });
                    // the bar points into the vertex whose side strands flow in
                    segs.push(Seg {
                        a: (xvl, ym),
                        b: (xvr, ym),
                        arrow: if s == Sign::Plus {
                            Arrow::Right
                        } else {
                            Arrow::Left
                        },
                        state: bar,
                    });
                    segs.push(Seg {
                        a: (xb[1], yb),
                        b: (xvr, ym),
                        arrow: arrow_for(s),
                        state: below(bi + 1),
                    });
                    segs.push(Seg {
                        a: (xvr, ym),
                        b: (xa[1], ya),
                        arrow: arrow_for(s.flip()),
                        state: above(ai + 1),
                    });
                }
            }
            bi += g.arity_below();
            ai += g.arity_above();
        }
    }

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" \
         viewBox=\"0 0 {w} {h}\">\n",
        w = fmt(width),
        h = fmt(height)
    ));
    out.push_str(
        "<style>.strand{fill:none;stroke:#000;stroke-width:2}\
         .flow{fill:none;stroke:#d81b3c;stroke-width:6;opacity:.35}\
         .vertex{fill:#000}.arrow{fill:#000}\
         .lbl{font:14px monospace;text-anchor:middle}</style>\n",
    );
    out.push_str(&format!(
        "<rect width=\"{}\" height=\"{}\" fill=\"#fff\"/>\n",
        fmt(width),
        fmt(height)
    ));

    // shaded flow underlay first, then the strands themselves
    for seg in segs.iter().filter(|s| s.state.map_or(false, |j| j != 0)) {
        out.push_str(&polyline(seg, "flow"));
    }
    for seg in &segs {
        out.push_str(&polyline(seg, "strand"));
    }
    for &(x, y) in &dots {
        out.push_str(&format!(
            "<circle class=\"vertex\" cx=\"{}\" cy=\"{}\" r=\"4\"/>\n",
            fmt(x),
            fmt(y)
        ));
    }
    for seg in &segs {
        out.push_str(&arrowhead(seg));
    }

    // boundary labels along the top
    let top = web.top_signs();
    let wt = top.len();
    let y_lbl = y_at(web.layers().len()) - 8.0;
    for (i, s) in top.iter().enumerate() {
        out.push_str(&format!(
            "<text class=\"lbl\" x=\"{}\" y=\"{}\">{}</text>\n",
            fmt(x_at(wt, i)),
            fmt(y_lbl),
            s.as_char()
        ));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn polyline(seg: &Seg, class: &str) -> String {
    format!(
        "<polyline class=\"{class}\" points=\"{},{} {},{}\"/>\n",
        fmt(seg.a.0),
        fmt(seg.a.1),
        fmt(seg.b.0),
        fmt(seg.b.1)
    )
}

fn arrowhead(seg: &Seg) -> String {
    let (ax, ay) = seg.a;
    let (bx, by) = seg.b;
    let (mx, my) = ((ax + bx) / 2.0, (ay + by) / 2.0);
    // unit vector along the arrow direction
    let (mut dx, mut dy) = (bx - ax, by - ay);
    let len = (dx * dx + dy * dy).sqrt();
    if len == 0.0 {
        return String::new();
    }
    dx /= len;
    dy /= len;
    let forward = match seg.arrow {
        Arrow::Up => dy < 0.0,
        Arrow::Down => dy > 0.0,
        Arrow::Right => dx > 0.0,
        Arrow::Left => dx < 0.0,
    };
    if !forward {
        dx = -dx;
        dy = -dy;
    }
    let (px, py) = (-dy, dx);
    let tip = (mx + 6.0 * dx, my + 6.0 * dy);
    let left = (mx - 4.0 * dx + 4.0 * px, my - 4.0 * dy + 4.0 * py);
    let right = (mx - 4.0 * dx - 4.0 * px, my - 4.0 * dy - 4.0 * py);
    format!(
        "<polygon class=\"arrow\" points=\"{},{} {},{} {},{}\"/>\n",
        fmt(tip.0),
        fmt(tip.1),
        fmt(left.0),
        fmt(left.1),
        fmt(right.0),
        fmt(right.1)
    )
}
