//! Standalone SVG drawings of a topology.
//!
//! Terminals are filled circles, Steiner nodes hollow squares, tree edges
//! lines. The view box is the node bounding box plus a 5% margin; y points
//! up as in the instance coordinates.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{EdgeKey, Network, NodeKind};

const MARGIN: f64 = 0.05;

pub fn svg_document(net: &Network, tree: &[EdgeKey]) -> Result<String> {
    let nodes = net.nodes();
    if nodes.is_empty() {
        return Err(Error::invalid("cannot render an empty network"));
    }
    let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
    for n in nodes {
        x0 = x0.min(n.x);
        x1 = x1.max(n.x);
        y0 = y0.min(n.y);
        y1 = y1.max(n.y);
    }
    let extent = (x1 - x0).max(y1 - y0);
    let extent = if extent > 0.0 { extent } else { 1.0 };
    let m = MARGIN * extent;
    let (vx, vy) = (x0 - m, -(y1 + m));
    let (vw, vh) = (x1 - x0 + 2.0 * m, y1 - y0 + 2.0 * m);
    let r = 0.012 * extent;
    let stroke = 0.004 * extent;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{vx:.4} {vy:.4} {vw:.4} {vh:.4}">"#
    );
    let _ = writeln!(
        out,
        r#"<g stroke="black" stroke-width="{stroke:.4}" stroke-linecap="round">"#
    );
    for k in tree {
        let (Some(a), Some(b)) = (net.node(k.lo), net.node(k.hi)) else {
            return Err(Error::invalid(format!("tree edge {k} has an unknown endpoint")));
        };
        let _ = writeln!(
            out,
            r#"<line x1="{:.4}" y1="{:.4}" x2="{:.4}" y2="{:.4}"/>"#,
            a.x, -a.y, b.x, -b.y
        );
    }
    let _ = writeln!(out, "</g>");

    let mut ordered: Vec<_> = nodes.iter().collect();
    ordered.sort_by_key(|n| n.id);
    for n in ordered {
        match n.kind {
            NodeKind::Terminal => {
                let _ = writeln!(
                    out,
                    r#"<circle id="n{}" cx="{:.4}" cy="{:.4}" r="{r:.4}" fill="black"/>"#,
                    n.id, n.x, -n.y
                );
            }
            NodeKind::Steiner => {
                let _ = writeln!(
                    out,
                    r#"<rect id="n{}" x="{:.4}" y="{:.4}" width="{:.4}" height="{:.4}" fill="none" stroke="black" stroke-width="{stroke:.4}"/>"#,
                    n.id,
                    n.x - r,
                    -n.y - r,
                    2.0 * r,
                    2.0 * r
                );
            }
        }
    }
    let _ = writeln!(out, "</svg>");
    Ok(out)
}

pub fn render_svg(net: &Network, tree: &[EdgeKey], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let doc = svg_document(net, tree)?;
    fs::write(path, doc).map_err(|e| Error::io(path, e))
}
