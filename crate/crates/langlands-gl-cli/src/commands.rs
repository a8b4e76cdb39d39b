use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Value};

use langlands_gl::comparison::ComparisonBlock;
use langlands_gl::functors::admissible_main_data;
use langlands_gl::order::{open_orbit, up_set};
use langlands_gl::weyl::kl::{all_perms, load_cache, save_cache};
use langlands_gl::weyl::{kl_poly, Permutation};
use langlands_gl::{
    bz_derivative, enumerate_multisegments, is_full_rank, orbit_dimension, project_weight, translate,
    verify_main_diagram, Multisegment, PadicElement, Point, RealBlock, RealElement, Side, TranslationDatum,
    WeightFunction,
};

use crate::{Cli, Command, Format};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Precondition(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn pre<E: Into<langlands_gl::Error>>(e: E) -> CliError {
    CliError::Precondition(e.into().to_string())
}

pub struct Output {
    pub text: String,
    pub pass: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, pass: true }
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn run(cli: &Cli) -> Result<Output> {
    if let Some(path) = &cli.kl_cache {
        if path.exists() {
            load_cache(path).map_err(input)?;
        }
    }
    let out = dispatch(cli)?;
    if let Some(path) = &cli.kl_cache {
        save_cache(path).map_err(input)?;
    }
    Ok(out)
}

fn dispatch(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Orbits { phi } => orbits(cli, phi),
        Command::Poset { phi } => poset(cli, phi),
        Command::Kl { n, x, w } => kl(cli, *n, x.as_deref().zip(w.as_deref())),
        Command::Compare { phi, e_l, e_r } => compare(cli, phi, e_l, e_r),
        Command::Gamma { phi, w, e_l, e_r } => gamma(cli, phi, w, e_l, e_r),
        Command::Derive {
            elem,
            k,
            right,
            project,
        } => derive(cli, elem, k, *right, project.as_deref()),
        Command::Translate {
            from_l,
            from_r,
            to_l,
            to_r,
            j,
            c,
            right,
            w,
        } => {
            let target = to_l.as_deref().zip(to_r.as_deref());
            translate_cmd(cli, (from_l, from_r), target, j.zip(*c), *right, w)
        }
        Command::Verify {
            phi,
            c,
            k,
            e_l,
            e_r,
            left,
            batch,
        } => {
            let (e_l, e_r) = (point(e_l)?, point(e_r)?);
            match (batch, phi) {
                (Some(dir), _) => verify_batch(cli, dir, e_l, e_r),
                (None, Some(phi)) => {
                    let (Some(c), Some(k)) = (c, k) else {
                        return Err(CliError::Input("verify needs --c and --k (or --batch)".into()));
                    };
                    let side = if *left { Side::Left } else { Side::Right };
                    verify_one(cli, phi, *c, point(k)?, e_l, e_r, side)
                }
                (None, None) => Err(CliError::Input("verify needs --phi or --batch".into())),
            }
        }
        Command::Dims { phi } => dims(cli, phi),
    }
}

fn format(cli: &Cli, allowed: &[Format], default: Format) -> Result<Format> {
    let f = cli.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Input(format!(
            "format {f:?} is not available for this command"
        )))
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable output")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_phi(cli: &Cli, path: &Path) -> Result<WeightFunction> {
    let phi: WeightFunction = read_json(path)?;
    if phi.mass() > cli.mass_bound {
        return Err(CliError::Precondition(format!(
            "mass {} exceeds the bound {}",
            phi.mass(),
            cli.mass_bound
        )));
    }
    Ok(phi)
}

fn point(s: &str) -> Result<Point> {
    s.parse().map_err(input)
}

fn points(s: &str) -> Result<Vec<Point>> {
    s.split(',').map(point).collect()
}

fn perm(s: &str) -> Result<Permutation> {
    s.parse().map_err(input)
}

fn check_n(cli: &Cli, n: usize) -> Result<()> {
    if n as u64 > cli.n_bound {
        return Err(CliError::Precondition(format!(
            "n = {n} exceeds the bound {}",
            cli.n_bound
        )));
    }
    Ok(())
}

/// Orbits of `φ` with, for each, the orbits covering it in the closure order.
fn orbit_poset(cli: &Cli, phi: &WeightFunction) -> Result<(Vec<Multisegment>, Vec<Vec<usize>>)> {
    let all = enumerate_multisegments(phi, cli.mass_bound).map_err(pre)?;
    let position: BTreeMap<&Multisegment, usize> = all.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let index = |m: &Multisegment| position[m];
    let above: Vec<BTreeSet<usize>> = all
        .par_iter()
        .map(|m| up_set(m).iter().map(index).filter(|&j| all[j] != *m).collect())
        .collect();
    let covers = above
        .iter()
        .map(|up| {
            up.iter()
                .copied()
                .filter(|&j| !up.iter().any(|&k| k != j && above[k].contains(&j)))
                .collect()
        })
        .collect();
    Ok((all, covers))
}

fn orbits(cli: &Cli, path: &Path) -> Result<Output> {
    let phi = read_phi(cli, path)?;
    let (all, covers) = orbit_poset(cli, &phi)?;
    let full: Vec<Option<bool>> = all.iter().map(|m| is_full_rank(m, &phi).ok()).collect();
    match format(cli, &[Format::Json, Format::Csv], Format::Json)? {
        Format::Csv => {
            let mut s = String::from("multisegment,dim,full_rank\n");
            for (m, f) in all.iter().zip(&full) {
                let f = f.map(|b| b.to_string()).unwrap_or_default();
                writeln!(s, "{m},{},{f}", orbit_dimension(m)).expect("string write");
            }
            Ok(Output::ok(s))
        }
        _ => {
            let rows: Vec<Value> = all
                .iter()
                .zip(&full)
                .zip(&covers)
                .map(|((m, f), up)| {
                    json!({
                        "label": m.to_string(),
                        "multisegment": m,
                        "dim": orbit_dimension(m),
                        "full_rank": f,
                        "covered_by": up.iter().map(|&j| all[j].to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(Output::ok(pretty(&json!({ "phi": phi, "orbits": rows }))))
        }
    }
}

fn poset(cli: &Cli, path: &Path) -> Result<Output> {
    let phi = read_phi(cli, path)?;
    let (all, covers) = orbit_poset(cli, &phi)?;
    let edges: Vec<(String, String)> = covers
        .iter()
        .enumerate()
        .flat_map(|(i, up)| up.iter().map(move |&j| (i, j)))
        .map(|(i, j)| (all[i].to_string(), all[j].to_string()))
        .collect();
    match format(cli, &[Format::Json, Format::Dot], Format::Dot)? {
        Format::Dot => {
            let mut s = String::from("digraph closure {\n  rankdir=BT;\n");
            for m in &all {
                writeln!(s, "  \"{m}\" [label=\"{m}\\ndim {}\"];", orbit_dimension(m)).expect("string write");
            }
            for (a, b) in &edges {
                writeln!(s, "  \"{a}\" -> \"{b}\";").expect("string write");
            }
            s.push_str("}\n");
            Ok(Output::ok(s))
        }
        _ => {
            let nodes: Vec<String> = all.iter().map(ToString::to_string).collect();
            Ok(Output::ok(pretty(
                &json!({ "phi": phi, "nodes": nodes, "edges": edges }),
            )))
        }
    }
}

fn kl(cli: &Cli, n: usize, pair: Option<(&str, &str)>) -> Result<Output> {
    check_n(cli, n)?;
    let fmt = format(cli, &[Format::Json, Format::Csv], Format::Json)?;
    let pairs: Vec<(Permutation, Permutation)> = match pair {
        Some((x, w)) => {
            let (x, w) = (perm(x)?, perm(w)?);
            if x.n() != n || w.n() != n {
                return Err(CliError::Input(format!("permutations must lie in S_{n}")));
            }
            vec![(x, w)]
        }
        None => {
            let all = all_perms(n);
            all.iter()
                .flat_map(|w| all.iter().filter(|x| x.bruhat_leq(w)).map(|x| (x.clone(), w.clone())))
                .collect()
        }
    };
    let polys: Vec<_> = pairs.par_iter().map(|(x, w)| kl_poly(x, w)).collect();
    let text = match fmt {
        Format::Csv => {
            let mut s = String::from("x,w,poly\n");
            for ((x, w), p) in pairs.iter().zip(&polys) {
                writeln!(s, "{x},{w},{p}").expect("string write");
            }
            s
        }
        _ => {
            let rows: Vec<Value> = pairs
                .iter()
                .zip(&polys)
                .map(|((x, w), p)| json!({ "x": x, "w": w, "coeffs": p.coeffs(), "poly": p.to_string() }))
                .collect();
            if pair.is_some() {
                pretty(&rows[0])
            } else {
                pretty(&json!({ "n": n, "pairs": rows }))
            }
        }
    };
    Ok(Output::ok(text))
}

fn blocks(cli: &Cli, phi: &WeightFunction, e_l: Point, e_r: Point) -> Result<Vec<ComparisonBlock>> {
    phi.integral_pieces()
        .iter()
        .map(|piece| {
            let b = ComparisonBlock::with_shifts(piece, e_l, e_r).map_err(pre)?;
            check_n(cli, b.n)?;
            Ok(b)
        })
        .collect()
}

fn compare(cli: &Cli, path: &Path, e_l: &str, e_r: &str) -> Result<Output> {
    let phi = read_phi(cli, path)?;
    let blocks = blocks(cli, &phi, point(e_l)?, point(e_r)?)?;
    let dumps: Vec<_> = blocks.iter().map(ComparisonBlock::dump).collect();
    match format(cli, &[Format::Json, Format::Csv], Format::Json)? {
        Format::Csv => {
            let mut s = String::from("piece,coset,w_min,w_max,multisegment,dim_orbit,dim_z,sign\n");
            for (i, d) in dumps.iter().enumerate() {
                for e in &d.entries {
                    writeln!(
                        s,
                        "{i},{},{},{},{},{},{},{}",
                        e.coset, e.w_min, e.w_max, e.multisegment, e.dim_orbit, e.dim_z, e.sign
                    )
                    .expect("string write");
                }
            }
            Ok(Output::ok(s))
        }
        _ if dumps.len() == 1 => Ok(Output::ok(pretty(&dumps[0]))),
        _ => Ok(Output::ok(pretty(&dumps))),
    }
}

fn real_json(x: &RealElement) -> Value {
    let terms: Vec<(String, i64)> = x.terms().map(|(c, k)| (c.label(), k)).collect();
    json!({ "basis": x.basis(), "terms": terms, "display": x.to_string() })
}

fn padic_json(x: &PadicElement) -> Value {
    json!({ "basis": x.basis(), "terms": x.terms().collect::<Vec<_>>(), "display": x.to_string() })
}

fn gamma(cli: &Cli, path: &Path, w: &str, e_l: &str, e_r: &str) -> Result<Output> {
    format(cli, &[Format::Json], Format::Json)?;
    let phi = read_phi(cli, path)?;
    let blocks = blocks(cli, &phi, point(e_l)?, point(e_r)?)?;
    let [block] = blocks.as_slice() else {
        return Err(CliError::Precondition(
            "gamma needs a weight with one integral piece".into(),
        ));
    };
    let w = perm(w)?;
    if w.n() != block.n {
        return Err(CliError::Input(format!("the permutation must lie in S_{}", block.n)));
    }
    let x = block.real.standard(&w).map_err(pre)?;
    let image = block.gamma(&x).map_err(pre)?;
    Ok(Output::ok(pretty(&json!({
        "block": block.real.to_string(),
        "w": w,
        "standard": real_json(&x),
        "image": padic_json(&image),
    }))))
}

fn derive(cli: &Cli, path: &Path, k: &str, right: bool, project: Option<&Path>) -> Result<Output> {
    format(cli, &[Format::Json], Format::Json)?;
    let e: PadicElement = read_json(path)?;
    let side = if right { Side::Right } else { Side::Left };
    let mut out = bz_derivative(side, point(k)?, &e).map_err(pre)?;
    if let Some(p) = project {
        out = project_weight(&out, &read_phi(cli, p)?);
    }
    Ok(Output::ok(pretty(&out)))
}

fn translate_cmd(
    cli: &Cli,
    from: (&str, &str),
    to: Option<(&str, &str)>,
    step: Option<(usize, usize)>,
    right: bool,
    w: &str,
) -> Result<Output> {
    format(cli, &[Format::Json], Format::Json)?;
    let source = RealBlock::new(points(from.0)?, points(from.1)?).map_err(pre)?;
    check_n(cli, source.n())?;
    let datum = match (to, step) {
        (Some((l, r)), _) => {
            let target = RealBlock::new(points(l)?, points(r)?).map_err(pre)?;
            TranslationDatum::between(&source, &target)
        }
        (None, Some((j, c))) if right => TranslationDatum::increment_right(&source, j, c),
        (None, Some((j, c))) => TranslationDatum::decrement_left(&source, j, c),
        (None, None) => return Err(CliError::Input("translate needs --to-l/--to-r or --j/--c".into())),
    }
    .map_err(pre)?;
    let w = perm(w)?;
    if w.n() != source.n() {
        return Err(CliError::Input(format!("the permutation must lie in S_{}", source.n())));
    }
    let x = source.standard(&w).map_err(pre)?;
    let image = translate(&datum, &x).map_err(pre)?;
    Ok(Output::ok(pretty(&json!({
        "source": datum.source.to_string(),
        "target": datum.target.to_string(),
        "standard": real_json(&x),
        "image": real_json(&image),
    }))))
}

fn verify_one(cli: &Cli, path: &Path, c: u32, k: Point, e_l: Point, e_r: Point, side: Side) -> Result<Output> {
    format(cli, &[Format::Json], Format::Json)?;
    let phi = read_phi(cli, path)?;
    let n = ComparisonBlock::new(&phi).map_err(pre)?.n;
    check_n(cli, n)?;
    let report = verify_main_diagram(&phi, c, k, e_l, e_r, side).map_err(pre)?;
    Ok(Output {
        pass: report.pass,
        text: pretty(&report),
    })
}

fn verify_file(cli: &Cli, path: &Path, e_l: Point, e_r: Point) -> Result<Value> {
    let phi = read_phi(cli, path)?;
    let name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let checked = ComparisonBlock::new(&phi).map_err(pre).and_then(|b| check_n(cli, b.n));
    if let Err(e) = checked {
        return Ok(json!({ "file": name, "phi": phi, "pass": false, "error": e.to_string() }));
    }
    let mut data = Vec::new();
    let mut pass = true;
    for (c, k, side) in admissible_main_data(&phi) {
        let report = verify_main_diagram(&phi, c, k, e_l, e_r, side).map_err(pre)?;
        pass &= report.pass;
        let mut entry = json!({ "c": c, "k": k.to_string(), "side": side, "pass": report.pass });
        if !report.pass {
            entry["report"] = serde_json::to_value(&report).expect("serializable report");
        }
        data.push(entry);
    }
    Ok(json!({ "file": name, "phi": phi, "pass": pass, "data": data }))
}

fn verify_batch(cli: &Cli, dir: &PathBuf, e_l: Point, e_r: Point) -> Result<Output> {
    format(cli, &[Format::Json], Format::Json)?;
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let results: Vec<Value> = files
        .par_iter()
        .map(|p| verify_file(cli, p, e_l, e_r))
        .collect::<Result<_>>()?;
    let pass = results.iter().all(|r| r["pass"] == json!(true));
    let checked: usize = results.iter().map(|r| r["data"].as_array().map_or(0, Vec::len)).sum();
    Ok(Output {
        pass,
        text: pretty(&json!({ "files": results.len(), "data": checked, "pass": pass, "results": results })),
    })
}

fn dims(cli: &Cli, path: &Path) -> Result<Output> {
    let phi = read_phi(cli, path)?;
    let all = enumerate_multisegments(&phi, cli.mass_bound).map_err(pre)?;
    let dim_e = phi.dim_e();
    let open = open_orbit(&phi);
    match format(cli, &[Format::Json, Format::Csv], Format::Json)? {
        Format::Csv => {
            let mut s = String::from("multisegment,dim,codim\n");
            for m in &all {
                let d = orbit_dimension(m);
                writeln!(s, "{m},{d},{}", dim_e - d).expect("string write");
            }
            Ok(Output::ok(s))
        }
        _ => {
            let rows: Vec<Value> = all
                .iter()
                .map(|m| {
                    let d = orbit_dimension(m);
                    json!({ "multisegment": m.to_string(), "dim": d, "codim": dim_e - d })
                })
                .collect();
            Ok(Output::ok(pretty(&json!({
                "phi": phi,
                "dim_e": dim_e,
                "dim_g": phi.dim_g(),
                "orbit_count": all.len(),
                "open_orbit": open.to_string(),
                "orbits": rows,
            }))))
        }
    }
}
