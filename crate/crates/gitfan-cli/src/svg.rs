//! Deterministic SVG rendering of rank-2 fans: one filled polygon per
//! full-dimensional chamber (clipped to the unit viewport box), one stroked
//! line per wall ray, chamber indices as labels, and an origin marker.
//! All geometry is computed in exact rationals; coordinates are fixed to
//! three decimals at the very end.

use gitfan::polycone::RatCone;
use gitfan::stability::GITFan;
use gitfan::{Int, Rat};
use std::fmt::Write as _;

const SIZE: i64 = 640;
const CENTER: i64 = 320;
const SCALE: i64 = 260;

fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// World coordinate to pixel string, truncated to three decimals.
fn px(v: &Rat, flip: bool) -> String {
    let w = rat(CENTER) + v * rat(if flip { -SCALE } else { SCALE });
    let scaled: Int = (w.numer() * Int::from(1000)) / w.denom();
    let neg = scaled < Int::from(0);
    let abs = if neg { -scaled } else { scaled };
    let int = &abs / Int::from(1000);
    let frac = &abs % Int::from(1000);
    format!("{}{}.{:03}", if neg { "-" } else { "" }, int, frac)
}

fn point(x: &Rat, y: &Rat) -> String {
    format!("{},{}", px(x, false), px(y, true))
}

/// Vertices of `cone` intersected with the box `[-1,1]^2`, sorted around
/// the centroid; fewer than three vertices means nothing to fill.
fn clip_polygon(cone: &RatCone) -> Vec<(Rat, Rat)> {
    // Constraints a x + b y <= c.
    let mut cons: Vec<(Rat, Rat, Rat)> = vec![
        (rat(1), rat(0), rat(1)),
        (rat(-1), rat(0), rat(1)),
        (rat(0), rat(1), rat(1)),
        (rat(0), rat(-1), rat(1)),
    ];
    for f in cone.facets() {
        cons.push((
            -Rat::from_integer(f.0[0].clone()),
            -Rat::from_integer(f.0[1].clone()),
            rat(0),
        ));
    }
    let mut verts: Vec<(Rat, Rat)> = Vec::new();
    for i in 0..cons.len() {
        for j in i + 1..cons.len() {
            let (a1, b1, c1) = &cons[i];
            let (a2, b2, c2) = &cons[j];
            let det = a1 * b2 - a2 * b1;
            if det == rat(0) {
                continue;
            }
            let x = (c1 * b2 - c2 * b1) / &det;
            let y = (a1 * c2 - a2 * c1) / &det;
            let feasible = cons.iter().all(|(a, b, c)| &(a * &x + b * &y) <= c);
            if feasible && !verts.contains(&(x.clone(), y.clone())) {
                verts.push((x, y));
            }
        }
    }
    if verts.len() < 3 {
        return Vec::new();
    }
    let n = rat(verts.len() as i64);
    let cx = verts.iter().map(|(x, _)| x.clone()).sum::<Rat>() / &n;
    let cy = verts.iter().map(|(_, y)| y.clone()).sum::<Rat>() / &n;
    // Exact angular order around the centroid.
    let half = |dx: &Rat, dy: &Rat| -> u8 {
        if dy > &rat(0) || (dy == &rat(0) && dx > &rat(0)) {
            0
        } else {
            1
        }
    };
    verts.sort_by(|(x1, y1), (x2, y2)| {
        let (dx1, dy1) = (x1 - &cx, y1 - &cy);
        let (dx2, dy2) = (x2 - &cx, y2 - &cy);
        half(&dx1, &dy1)
            .cmp(&half(&dx2, &dy2))
            .then_with(|| (&dx2 * &dy1).cmp(&(&dx1 * &dy2)))
    });
    verts
}

/// Scale a lattice direction to touch the box boundary.
fn to_boundary(v: &gitfan::polycone::LatVec) -> (Rat, Rat) {
    let x = Rat::from_integer(v.0[0].clone());
    let y = Rat::from_integer(v.0[1].clone());
    let ax = if x < rat(0) { -x.clone() } else { x.clone() };
    let ay = if y < rat(0) { -y.clone() } else { y.clone() };
    let m = if ax > ay { ax } else { ay };
    (x / &m, y / &m)
}

const FILLS: [&str; 6] = ["#c6dbef", "#fdd0a2", "#c7e9c0", "#dadaeb", "#fee0d2", "#e7e1ef"];

pub fn render_fan_svg(fan: &GITFan) -> Result<String, String> {
    if fan.char_rank != 2 {
        return Err(format!("fan lives in rank {}, can only draw rank 2", fan.char_rank));
    }
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    )
    .unwrap();
    writeln!(out, "  <rect width=\"{SIZE}\" height=\"{SIZE}\" fill=\"white\"/>").unwrap();

    let mut labels: Vec<(String, String, usize)> = Vec::new();
    for (i, ch) in fan.chambers.iter().enumerate() {
        if ch.cone.dim() != 2 {
            continue;
        }
        let verts = clip_polygon(&ch.cone);
        if verts.is_empty() {
            continue;
        }
        let pts: Vec<String> = verts.iter().map(|(x, y)| point(x, y)).collect();
        writeln!(
            out,
            "  <polygon points=\"{}\" fill=\"{}\" stroke=\"#555555\" stroke-width=\"1\"/>",
            pts.join(" "),
            FILLS[i % FILLS.len()]
        )
        .unwrap();
        let n = rat(verts.len() as i64);
        let cx = verts.iter().map(|(x, _)| x.clone()).sum::<Rat>() / &n;
        let cy = verts.iter().map(|(_, y)| y.clone()).sum::<Rat>() / &n;
        labels.push((px(&cx, false), px(&cy, true), i));
    }

    for wall in &fan.walls {
        if wall.dim() != 1 {
            continue;
        }
        if wall.lineality_dim() == 1 {
            let l = &wall.lineality_basis()[0];
            let (x, y) = to_boundary(l);
            writeln!(
                out,
                "  <line class=\"wall\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#d62728\" stroke-width=\"2\"/>",
                px(&-x.clone(), false),
                px(&-y.clone(), true),
                px(&x, false),
                px(&y, true)
            )
            .unwrap();
        } else {
            let r = &wall.extreme_rays()[0];
            let (x, y) = to_boundary(r);
            writeln!(
                out,
                "  <line class=\"wall\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#d62728\" stroke-width=\"2\"/>",
                px(&rat(0), false),
                px(&rat(0), true),
                px(&x, false),
                px(&y, true)
            )
            .unwrap();
        }
    }

    for (x, y, i) in labels {
        writeln!(
            out,
            "  <text x=\"{x}\" y=\"{y}\" font-family=\"sans-serif\" font-size=\"16\" fill=\"#222222\">{i}</text>"
        )
        .unwrap();
    }
    writeln!(out, "  <circle cx=\"{CENTER}\" cy=\"{CENTER}\" r=\"3\" fill=\"#222222\"/>").unwrap();
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use gitfan::groupdata::Character;
    use gitfan::polycone::Fan;
    use gitfan::stability::{Chamber, GITFan};

    #[test]
    fn degenerate_fan_renders_origin_marker_only() {
        let zero = RatCone::zero(2);
        let fan = GITFan {
            char_rank: 2,
            fan: Fan::from_maximal_cones(2, &[zero.clone()]),
            chambers: vec![Chamber {
                cone: zero.clone(),
                representative: Character::from_i64(&[0, 0]),
                semistable_supports: vec![],
                components: vec![],
                properly_stable: Some(false),
            }],
            effective_cone: zero,
            walls: vec![],
            complete: true,
        };
        let svg = render_fan_svg(&fan).unwrap();
        assert!(!svg.contains("<polygon"));
        assert!(!svg.contains("class=\"wall\""));
        assert!(svg.contains("<circle"));
    }

    #[test]
    fn wrong_rank_is_rejected() {
        let zero = RatCone::zero(3);
        let fan = GITFan {
            char_rank: 3,
            fan: Fan::from_maximal_cones(3, &[zero.clone()]),
            chambers: vec![],
            effective_cone: zero,
            walls: vec![],
            complete: true,
        };
        assert!(render_fan_svg(&fan).is_err());
    }
}
