//! Writing sampled grids as OBJ meshes, CSV tables or JSON.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::stereo_to_imh;
use crate::quat::Quat;
use crate::rat::{parse_rat, rat_to_decimal, rat_to_string};
use crate::surface::{contains_check, Ambient, GridPoint, SampleGrid};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeshFormat {
    Obj,
    Csv,
    Json,
}

pub const CSV_HEADER: &str = "i,j,u,v,re,x,y,z";

fn require_points(grid: &SampleGrid) -> Result<()> {
    if grid.points.is_empty() {
        return Err(Error::DegenerateInput("every grid point is a pole".into()));
    }
    Ok(())
}

pub fn render(grid: &SampleGrid, format: MeshFormat, precision: usize) -> Result<String> {
    require_points(grid)?;
    match format {
        MeshFormat::Obj => to_obj(grid, precision),
        MeshFormat::Csv => Ok(to_csv(grid)),
        MeshFormat::Json => serde_json::to_string_pretty(grid)
            .map_err(|e| Error::InternalInconsistency(e.to_string())),
    }
}

/// OBJ vertices are points of `Im H`; a grid on `S^3` is projected to `Im H`
/// first, which drops the point `1`.
pub fn to_obj(grid: &SampleGrid, precision: usize) -> Result<String> {
    require_points(grid)?;
    let project = contains_check(grid) == Ambient::InS3;
    let mut index = HashMap::new();
    let mut out = String::new();
    writeln!(
        out,
        "# {}x{} grid, {} poles",
        grid.n,
        grid.n,
        grid.poles.len()
    )
    .unwrap();
    for gp in &grid.points {
        let p = if project {
            match stereo_to_imh(&gp.point) {
                Ok(q) => q,
                Err(_) => continue,
            }
        } else {
            gp.point.clone()
        };
        index.insert((gp.i, gp.j), index.len() + 1);
        writeln!(
            out,
            "v {} {} {}",
            rat_to_decimal(&p.x, precision),
            rat_to_decimal(&p.y, precision),
            rat_to_decimal(&p.z, precision)
        )
        .unwrap();
    }
    for i in 0..grid.n.saturating_sub(1) {
        for j in 0..grid.n - 1 {
            let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)].map(|c| index.get(&c));
            if let [Some(a), Some(b), Some(c), Some(d)] = corners {
                writeln!(out, "f {a} {b} {c} {d}").unwrap();
            }
        }
    }
    Ok(out)
}

pub fn to_csv(grid: &SampleGrid) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for gp in &grid.points {
        let p = &gp.point;
        let cells = [&gp.u, &gp.v, &p.re, &p.x, &p.y, &p.z].map(rat_to_string);
        writeln!(out, "{},{},{}", gp.i, gp.j, cells.join(",")).unwrap();
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<GridPoint>> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(CSV_HEADER) {
        return Err(Error::Parse(format!("expected header {CSV_HEADER:?}")));
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != 8 {
                return Err(Error::Parse(format!("expected 8 fields in {line:?}")));
            }
            let idx = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad index {s:?}")))
            };
            let r: Vec<_> = cells[2..]
                .iter()
                .map(|c| parse_rat(c))
                .collect::<Result<_>>()?;
            Ok(GridPoint {
                i: idx(cells[0])?,
                j: idx(cells[1])?,
                u: r[0].clone(),
                v: r[1].clone(),
                point: Quat::new(r[2].clone(), r[3].clone(), r[4].clone(), r[5].clone()),
            })
        })
        .collect()
}
