use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};
use stablerank::building::{solomon_tits_report, tits_building};
use stablerank::cbc::{common_basis_complex, delta, verify_connectivity, CbcOptions};
use stablerank::export::write_export;
use stablerank::filtration::{census, grid_points, CubicalDiagram};
use stablerank::homology::{json_int, json_ints};
use stablerank::linalg::enumerate_subspaces;
use stablerank::milnor::milnor_k;
use stablerank::rankss::{coinvariants_delta, rank_complex_table};
use stablerank::{homology, Error, FqField, Result, SimplicialComplex, SubspaceFq};

use crate::{Cli, Command, CubeArgs, FieldRank, Format};

pub fn run(cli: &Cli) -> Result<String> {
    let opts = CbcOptions { big: cli.big };
    let value = match &cli.command {
        Command::FieldTable { p, k, format } => return field_table(*p, *k, *format),
        Command::Subspaces { fr, dim } => subspaces(*fr, *dim)?,
        Command::GlOrder { fr } => gl_order(*fr)?,
        Command::Building { fr, export } => {
            let b = tits_building(&field(fr.q)?, fr.r)?;
            complex_summary(fr, &b.complex, &b.vertices, export.as_deref())?
        }
        Command::Steinberg { fr } => {
            let rep = solomon_tits_report(&field(fr.q)?, fr.r)?;
            json!({"rank": rep.steinberg_rank, "concentrated": rep.concentrated, "free": rep.free})
        }
        Command::Cbc { fr, export } => {
            let c = common_basis_complex(&field(fr.q)?, fr.r, opts)?;
            complex_summary(fr, &c.complex, &c.vertices, export.as_deref())?
        }
        Command::Delta { fr } => {
            let rep = delta(&field(fr.q)?, fr.r, opts)?;
            json!({"rank": rep.delta_rank, "torsion": json_ints(&rep.delta_torsion), "concentrated": rep.concentrated})
        }
        Command::Connectivity { fr } => {
            let rep = verify_connectivity(&field(fr.q)?, fr.r, opts)?;
            json!({
                "q": rep.q,
                "r": rep.r,
                "degree": 2 * rep.r as i64 - 3,
                "concentrated": rep.concentrated,
                "degrees_with_homology": rep.degrees_with_homology,
                "homology": rep.homology.to_json(),
            })
        }
        Command::Rankjump { cube, diagram } => rankjump(*cube, diagram)?,
        Command::FiltrationCensus { cube, format } => return filtration_census(*cube, *format),
        Command::Milnor { q, j } => to_value(&milnor_k(&field(*q)?, *j)?),
        Command::Coinvariants { fr } => to_value(&coinvariants_delta(&field(fr.q)?, fr.r)?),
        Command::Ranktable { q, wmax } => ranktable(*q, *wmax)?,
        Command::Homology { input, reduced } => {
            let c = SimplicialComplex::from_scx(&read(input)?)?;
            homology(&c, *reduced).to_json()
        }
    };
    Ok(format!("{value}\n"))
}

fn field(q: usize) -> Result<FqField> {
    FqField::of_order(q)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data serializes")
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::InvalidParameter(format!("csv output: {e}"));
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidParameter(format!("csv output: {e}")))?;
    Ok(String::from_utf8(bytes).expect("ascii"))
}

fn field_table(p: usize, k: usize, format: Format) -> Result<String> {
    let f = FqField::new(p, k)?;
    let q = f.q() as u8;
    let cells: Vec<(&str, u8, u8, u8)> = [("add", FqField::add as fn(&FqField, u8, u8) -> u8), ("mul", FqField::mul)]
        .into_iter()
        .flat_map(|(name, op)| {
            let f = &f;
            (0..q).flat_map(move |a| (0..q).map(move |b| (name, a, b, op(f, a, b))))
        })
        .collect();
    match format {
        Format::Csv => csv_text(
            &["op", "a", "b", "value"],
            cells
                .iter()
                .map(|(op, a, b, v)| vec![op.to_string(), a.to_string(), b.to_string(), v.to_string()]),
        ),
        Format::Json => {
            let table = |name: &str| -> Vec<Vec<u8>> {
                (0..q as usize)
                    .map(|a| cells.iter().filter(|c| c.0 == name && c.1 as usize == a).map(|c| c.3).collect())
                    .collect()
            };
            let v = json!({
                "p": p,
                "k": k,
                "q": f.q(),
                "reduction_poly": f.reduction_poly(),
                "generator": f.generator(),
                "add": table("add"),
                "mul": table("mul"),
            });
            Ok(format!("{v}\n"))
        }
    }
}

fn basis_matrix(v: &SubspaceFq) -> Vec<Vec<u8>> {
    v.basis_rows().map(<[u8]>::to_vec).collect()
}

fn subspaces(fr: FieldRank, dim: Option<usize>) -> Result<Value> {
    let f = field(fr.q)?;
    if let Some(d) = dim.filter(|&d| d > fr.r) {
        return Err(Error::InvalidParameter(format!("dimension {d} above rank {}", fr.r)));
    }
    let dims: Vec<usize> = match dim {
        Some(d) => vec![d],
        None => (0..=fr.r).collect(),
    };
    let mut out = Vec::new();
    for d in dims {
        out.extend(enumerate_subspaces(&f, fr.r, d)?.iter().map(basis_matrix));
    }
    Ok(json!(out))
}

fn gl_order(fr: FieldRank) -> Result<Value> {
    field(fr.q)?;
    let q = BigInt::from(fr.q);
    let top = q.pow(fr.r as u32);
    let order = (0..fr.r).fold(BigInt::from(1), |acc, i| acc * (&top - q.pow(i as u32)));
    Ok(json_int(&order))
}

fn complex_summary(fr: &FieldRank, c: &SimplicialComplex, vertices: &[SubspaceFq], export: Option<&Path>) -> Result<Value> {
    let mut v = json!({
        "q": fr.q,
        "r": fr.r,
        "vertices": c.num_vertices(),
        "facets": c.facets().len(),
        "dimension": c.dimension(),
        "simplex_counts": c.simplex_counts(),
    });
    if let Some(path) = export {
        let registry = write_export(path, c, vertices)?;
        v["export"] = json!({"complex": path.display().to_string(), "registry": registry.display().to_string()});
    }
    Ok(v)
}

fn point_key(p: &[usize]) -> String {
    p.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn rankjump(cube: CubeArgs, path: &Path) -> Result<Value> {
    let f = field(cube.q_field)?;
    let text = read(path)?;
    let json: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let d = CubicalDiagram::from_json(&f, cube.r, cube.n, cube.deg, &json)?;
    let check = d.check_lattice_conditions(&f);
    if let Some(v) = &check.violation {
        return Err(Error::LatticeViolation(serde_json::to_string(v).expect("plain data")));
    }
    let jumps: serde_json::Map<String, Value> = grid_points(cube.n, cube.deg)
        .map(|p| Ok((point_key(&p), json!(d.rank_jump(&p)?))))
        .collect::<Result<_>>()?;
    let dp = d.distinguished_points(&f)?;
    let distinguished: Vec<Value> = dp
        .points
        .iter()
        .map(|(p, m)| json!({"point": p, "multiplicity": m}))
        .collect();
    Ok(json!({
        "jumps": jumps,
        "distinguished": distinguished,
        "c": dp.component_count(),
        "higher_cubes_approximated": check.higher_cubes_approximated,
    }))
}

fn filtration_census(cube: CubeArgs, format: Format) -> Result<String> {
    let hist: BTreeMap<usize, usize> = census(&field(cube.q_field)?, cube.r, cube.n, cube.deg)?;
    match format {
        Format::Csv => csv_text(&["c", "count"], hist.iter().map(|(c, n)| vec![c.to_string(), n.to_string()])),
        Format::Json => {
            let rows: Vec<Value> = hist.iter().map(|(c, n)| json!({"c": c, "count": n})).collect();
            Ok(format!("{}\n", json!(rows)))
        }
    }
}

fn ranktable(q: usize, wmax: usize) -> Result<Value> {
    let cells = rank_complex_table(&field(q)?, wmax)?;
    let rows: Vec<Vec<Value>> = (0..=wmax)
        .map(|w| cells.iter().filter(|c| c.w == w).map(to_value).collect())
        .collect();
    Ok(json!({"q": q, "wmax": wmax, "rows": rows}))
}
