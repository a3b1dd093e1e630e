use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::Figure;
use crate::format::fix6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MarkerStyle {
    /// Radius in pixels.
    pub radius: f64,
    pub fill: String,
    pub opacity: f64,
}

impl Default for MarkerStyle {
    fn default() -> Self {
        MarkerStyle {
            radius: 1.5,
            fill: "#d62728".into(),
            opacity: 0.8,
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub(super) fn render(fig: &Figure) -> String {
    let w = fig.window;
    let mut out = String::new();
    // String writes cannot fail
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{1}" viewBox="0 0 {0} {1}">"#,
        w.width_px, w.height_px
    );
    if let Some(title) = &fig.title {
        let _ = writeln!(out, "<title>{}</title>", escape(title));
    }
    let _ = writeln!(
        out,
        r#"<desc>re [{}, {}] im [{}, {}] markers {} dropped {}</desc>"#,
        fix6(w.re_min),
        fix6(w.re_max),
        fix6(w.im_min),
        fix6(w.im_max),
        fig.markers.len(),
        fig.dropped
    );
    let _ = writeln!(
        out,
        r##"<rect x="0" y="0" width="{}" height="{}" fill="#ffffff"/>"##,
        w.width_px, w.height_px
    );

    if let Some(r) = &fig.background {
        // scale the raster grid onto the figure grid
        let sx = w.width_px as f64 / r.window.width_px as f64;
        let sy = w.height_px as f64 / r.window.height_px as f64;
        let _ = writeln!(out, r#"<g id="raster" shape-rendering="crispEdges">"#);
        for row in 0..r.window.height_px {
            let mut col = 0;
            while col < r.window.width_px {
                let g = r.gray(r.count(col, row));
                let start = col;
                while col < r.window.width_px && r.gray(r.count(col, row)) == g {
                    col += 1;
                }
                if g == 255 {
                    continue;
                }
                let _ = writeln!(
                    out,
                    r##"<rect x="{}" y="{}" width="{}" height="{}" fill="#{g:02x}{g:02x}{g:02x}"/>"##,
                    fix6(start as f64 * sx),
                    fix6(row as f64 * sy),
                    fix6((col - start) as f64 * sx),
                    fix6(sy)
                );
            }
        }
        let _ = writeln!(out, "</g>");
    }

    let _ = writeln!(
        out,
        r#"<g id="markers" fill="{}" fill-opacity="{}">"#,
        escape(&fig.style.fill),
        fix6(fig.style.opacity)
    );
    let radius = fix6(fig.style.radius);
    for z in &fig.markers {
        let (x, y) = w.to_pixel(*z);
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{radius}"/>"#,
            fix6(x),
            fix6(y)
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}
