//! Static SVG and ASCII pictures of the ladder diagram.

use std::fmt::Write;

use crate::{gamma, DiagramError, Facet, FacetKind, SchubertCycle};

const CELL: usize = 40;
const MARGIN: usize = 30;

/// What to draw on top of `Γ(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramSpec {
    pub n: usize,
    /// Box sizes whose segment `I_m` gets a marker. For `n = 3` the single
    /// segment is labelled `I`.
    pub segments: Vec<usize>,
    /// Schubert cycles whose facets are highlighted.
    pub cycles: Vec<(FacetKind, usize)>,
}

impl DiagramSpec {
    /// Every valid box size, no cycles.
    pub fn all_segments(n: usize) -> Self {
        let segments = if n == 3 {
            vec![2]
        } else {
            (2..=n / 2).collect()
        };
        DiagramSpec {
            n,
            segments,
            cycles: Vec::new(),
        }
    }

    fn validate(&self) -> Result<Vec<SchubertCycle>, DiagramError> {
        gamma(self.n)?;
        for &m in &self.segments {
            if self.n == 3 {
                if m != 2 {
                    return Err(DiagramError::BoxOutOfRange { n: 3, m });
                }
            } else {
                crate::Shape::new(self.n, m)?;
            }
        }
        self.cycles
            .iter()
            .map(|&(kind, idx)| SchubertCycle::new(self.n, kind, idx))
            .collect()
    }

    fn segment_label(&self, m: usize) -> String {
        if self.n == 3 {
            "I".to_string()
        } else {
            format!("I_{m}")
        }
    }
}

/// Top-left corner of cell `(i, j)`: column `j` left to right, row `i` bottom to top.
fn origin(n: usize, i: usize, j: usize) -> (usize, usize) {
    (MARGIN + (j - 1) * CELL, MARGIN + (n - i) * CELL)
}

/// Endpoints of the edge shared by the two cells of a facet.
fn facet_edge(n: usize, f: Facet) -> (usize, usize, usize, usize) {
    let (x, y) = origin(n, f.cell.i, f.cell.j);
    match f.kind {
        // (i+1, j) sits directly above (i, j)
        FacetKind::Horizontal => (x, y, x + CELL, y),
        // (i, j+1) sits directly to the right
        FacetKind::Vertical => (x + CELL, y, x + CELL, y + CELL),
    }
}

pub fn svg(spec: &DiagramSpec) -> Result<String, DiagramError> {
    let cycles = spec.validate()?;
    let n = spec.n;
    let size = 2 * MARGIN + n * CELL;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(out, r#"<g class="ladder" id="gamma-{n}">"#);
    for c in gamma(n)? {
        let (x, y) = origin(n, c.i, c.j);
        let _ = writeln!(
            out,
            r##"<rect class="cell" data-i="{}" data-j="{}" x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="none" stroke="#000"/>"##,
            c.i, c.j
        );
    }
    for i in 1..=n {
        let (x, y) = origin(n, i, n + 1 - i);
        let _ = writeln!(
            out,
            r##"<rect class="frozen" data-i="{i}" data-j="{}" x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="none" stroke="#888" stroke-dasharray="4 3"/>"##,
            n + 1 - i
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="11" text-anchor="middle">{}</text>"#,
            x + CELL / 2,
            y + CELL / 2 + 4,
            n as i64 - 2 * i as i64 + 1
        );
    }
    out.push_str("</g>\n");

    for &m in &spec.segments {
        let label = spec.segment_label(m);
        let (x, y) = origin(n, m, 1);
        let side = m * CELL;
        let _ = writeln!(out, r#"<g class="segment-marker" id="segment-{label}">"#);
        let _ = writeln!(
            out,
            r##"<rect class="box" x="{x}" y="{y}" width="{side}" height="{side}" fill="#4a90d9" fill-opacity="0.15" stroke="#4a90d9"/>"##
        );
        let _ = writeln!(
            out,
            r##"<text x="{}" y="{}" font-size="12" fill="#4a90d9">{label}</text>"##,
            x + side - 16,
            y + 13
        );
        out.push_str("</g>\n");
    }

    for cyc in &cycles {
        let _ = writeln!(
            out,
            r#"<g class="schubert-cycle" id="cycle-{}">"#,
            cyc.label().replace(['{', '}'], "").replace(',', "-")
        );
        for &f in &cyc.facets {
            let (x1, y1, x2, y2) = facet_edge(n, f);
            let _ = writeln!(
                out,
                r##"<line class="facet" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#d0342c" stroke-width="4"/>"##
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Text picture: `#` inside the largest marked box, `.` elsewhere in `Γ(n)`,
/// `λ` values on the anti-diagonal, rows printed top to bottom.
pub fn ascii(spec: &DiagramSpec) -> Result<String, DiagramError> {
    let cycles = spec.validate()?;
    let n = spec.n;
    let largest = spec.segments.iter().copied().max().unwrap_or(0);
    let mut out = String::new();
    for i in (1..=n).rev() {
        let _ = write!(out, "{i:>3} |");
        for j in 1..=n + 1 - i {
            let cell = if i + j == n + 1 {
                format!("{:>3}", n as i64 - 2 * i as i64 + 1)
            } else if i <= largest && j <= largest {
                "  #".to_string()
            } else {
                "  .".to_string()
            };
            out.push_str(&cell);
        }
        out.push('\n');
    }
    let _ = write!(out, "    +");
    for j in 1..=n {
        let _ = write!(out, "{j:>3}");
    }
    out.push('\n');
    for &m in &spec.segments {
        let _ = writeln!(out, "segment {}: box B({m})", spec.segment_label(m));
    }
    for cyc in &cycles {
        let facets: Vec<String> = cyc.facets.iter().map(|f| f.to_string()).collect();
        let _ = writeln!(out, "cycle {}: {}", cyc.label(), facets.join(", "));
    }
    Ok(out)
}
