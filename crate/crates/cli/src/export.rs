//! Mesh writers. OBJ vertices are written as `v x1 x2 x0` so the time-like
//! coordinate x0 is the viewer's vertical axis. Singular curves become `l`
//! elements and swallowtail markers `p` elements. Indices are 1-based.

use std::io::{self, Write};

use maxface_core::mesh::{PolylineKind, SurfaceMesh};
use maxface_core::Extended;

pub fn write_obj(mesh: &SurfaceMesh, w: &mut dyn Write) -> io::Result<()> {
    for v in &mesh.vertices {
        let [x0, x1, x2] = v.position;
        writeln!(w, "v {x1} {x2} {x0}")?;
    }
    for [a, b, c] in &mesh.faces {
        writeln!(w, "f {} {} {}", a + 1, b + 1, c + 1)?;
    }
    for line in &mesh.polylines {
        let tag = match line.kind {
            PolylineKind::SingularCurve => "l",
            PolylineKind::SwallowtailMarkers => "p",
        };
        if line.vertices.is_empty() {
            continue;
        }
        write!(w, "{tag}")?;
        for i in &line.vertices {
            write!(w, " {}", i + 1)?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// One row per vertex; the point at infinity has `inf` coordinates.
pub fn write_csv(mesh: &SurfaceMesh, w: &mut dyn Write) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["z_re", "z_im", "x0", "x1", "x2", "ds2_factor", "abs_g", "singular"])?;
    for v in &mesh.vertices {
        let (re, im) = match v.z {
            Extended::Finite(z) => (z.re.to_string(), z.im.to_string()),
            Extended::Infinity => ("inf".into(), "inf".into()),
        };
        let [x0, x1, x2] = v.position;
        out.write_record([
            re,
            im,
            x0.to_string(),
            x1.to_string(),
            x2.to_string(),
            v.ds2_factor.to_string(),
            v.abs_g.to_string(),
            v.singular.to_string(),
        ])?;
    }
    out.flush()
}

/// What [`parse_obj`] reads back: positions as `[x0, x1, x2]` and 0-based
/// indices.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ObjData {
    pub positions: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
    pub lines: Vec<Vec<usize>>,
    pub points: Vec<Vec<usize>>,
}

pub fn parse_obj(text: &str) -> Result<ObjData, String> {
    let mut obj = ObjData::default();
    for (n, line) in text.lines().enumerate() {
        let bad = |what: &str| format!("line {}: {what}", n + 1);
        let mut parts = line.split_whitespace();
        let Some(tag) = parts.next() else { continue };
        let rest: Vec<&str> = parts.collect();
        let index = |s: &&str| -> Result<usize, String> {
            match s.parse::<usize>() {
                Ok(i) if i >= 1 => Ok(i - 1),
                _ => Err(bad("bad index")),
            }
        };
        match tag {
            "v" => {
                let xs: Vec<f64> = rest
                    .iter()
                    .map(|s| s.parse().map_err(|_| bad("bad coordinate")))
                    .collect::<Result<_, _>>()?;
                let [x1, x2, x0] = xs[..] else { return Err(bad("expected 3 coordinates")) };
                obj.positions.push([x0, x1, x2]);
            }
            "f" => {
                let ix: Vec<usize> = rest.iter().map(index).collect::<Result<_, _>>()?;
                let [a, b, c] = ix[..] else { return Err(bad("expected a triangle")) };
                obj.faces.push([a, b, c]);
            }
            "l" => obj.lines.push(rest.iter().map(index).collect::<Result<_, _>>()?),
            "p" => obj.points.push(rest.iter().map(index).collect::<Result<_, _>>()?),
            "#" => {}
            _ => return Err(bad("unknown element")),
        }
    }
    Ok(obj)
}
