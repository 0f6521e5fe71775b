//! `homcx`: command-line front end for the homcx library.
//!
//! Exit codes: 0 success, 1 unreadable input or bad arguments, 2 a
//! hypothesis of the requested computation fails, 3 a resource cap was hit,
//! 4 an internal invariant was violated.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use homcx::chain::{connectivity_estimate, edge_path_group_trivial, DEFAULT_TIETZE_PASSES};
use homcx::chromatic::{induced_involution, PhiCertificate};
use homcx::collapse::{is_tree_like, verify_collapse_equivalence, SearchOutcome, DEFAULT_BUDGET};
use homcx::hom::DEFAULT_CELL_CAP;
use homcx::projectivity::{fibre, holonomy_group, transport_map};
use homcx::{
    chain_map_of, chains_of, chromatic_number, homology, induced_on_homology, lovasz_bound_report, phi_d_certify, simplicial_chains,
    two_iota_star_check, Error, HomComplex, IntegralHomology, Projectivity, Simplex, SimplicialComplex, VertexMap,
};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "homcx", version, about = "Hom-complexes, holonomy, homology and chromatic bounds")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args)]
struct Global {
    /// Maximum number of cells in any Hom-complex.
    #[arg(long, global = true, default_value_t = DEFAULT_CELL_CAP)]
    cap: usize,
    /// Seed for randomized choices. No current verb draws random numbers;
    /// accepted so scripts can pin it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Try to show the fundamental group trivial when estimating
    /// connectivity.
    #[arg(long, global = true)]
    pi1: bool,
    /// Node budget for backtracking searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(Subcommand)]
enum Verb {
    /// Build Hom(K, L) and print its cells.
    BuildHom { k: PathBuf, l: PathBuf },
    /// Homology of a complex or of a Hom-complex document.
    Homology {
        file: PathBuf,
        /// Reduced homology.
        #[arg(long)]
        reduced: bool,
        /// Also estimate connectivity (uses reduced homology).
        #[arg(long)]
        connectivity: bool,
    },
    /// Holonomy group of a simplex.
    Holonomy {
        k: PathBuf,
        /// Base simplex, vertices separated by ','.
        #[arg(long)]
        sigma: String,
    },
    /// Parallel transport on Hom(sigma, L) along a walk of simplices.
    Transport {
        l: PathBuf,
        /// Simplices separated by ';', vertices by ','.
        #[arg(long)]
        path: String,
        /// Complex the walk must lie in.
        #[arg(long)]
        complex: Option<PathBuf>,
    },
    /// Tree-like recognition; with --check, verify every collapse on Hom(-, L).
    Collapse {
        k: PathBuf,
        /// Target L: check each collapse against Hom(-, L).
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Chromatic number and a colouring.
    Chromatic { k: PathBuf },
    /// Check the Phi_d conditions.
    PhiCheck {
        gamma: PathBuf,
        /// Vertex permutation, as a JSON array or a comma list.
        #[arg(long)]
        involution: String,
        /// Invariant simplex, vertices separated by ','.
        #[arg(long)]
        sigma: String,
        /// Also check the induced involution on Hom(Gamma, K).
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Lower bound for chi(K) from the connectivity of Hom(Gamma, K).
    LovaszBound {
        gamma: PathBuf,
        k: PathBuf,
        /// Vertex permutation, as a JSON array or a comma list.
        #[arg(long)]
        involution: String,
        /// Invariant simplex, vertices separated by ','.
        #[arg(long)]
        sigma: String,
    },
    /// Inclusion K2 -> C_{2r+1} and the flip of K2 on Hom(-, K_n).
    TwoIota {
        /// Cycle length 2r + 1.
        #[arg(long)]
        r: usize,
        /// Target complete graph K_n.
        #[arg(long)]
        n: usize,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Lib(e) => match e {
                Error::Json(_)
                | Error::VertexOutOfRange { .. }
                | Error::EmptyFacet
                | Error::RepeatedVertex(_)
                | Error::LabelCount(..)
                | Error::MapLength(..) => 1,
                Error::CapExceeded { .. } | Error::TargetTooLarge(_) => 3,
                Error::Internal(_) | Error::CollapseCheck { .. } => 4,
                _ => 2,
            },
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Lib(Error::Phi(p)) => eprintln!("error [{}]: {p}", p.code()),
                Failure::Lib(e) if e.is_internal() => eprintln!("internal error: {e:?}"),
                Failure::Lib(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    let cap = Some(g.cap);
    match &cli.verb {
        Verb::BuildHom { k, l } => build_hom(g, &read_complex(k)?, &read_complex(l)?),
        Verb::Homology { file, reduced, connectivity } => homology_cmd(g, file, *reduced, *connectivity),
        Verb::Holonomy { k, sigma } => holonomy_cmd(g, &read_complex(k)?, &parse_simplex(sigma)?),
        Verb::Transport { l, path, complex } => {
            let walk = parse_walk(path)?;
            let p = match complex {
                Some(k) => Projectivity::along_in(&read_complex(k)?, &walk)?,
                None => Projectivity::along(&walk)?,
            };
            transport_cmd(g, &read_complex(l)?, &p)
        }
        Verb::Collapse { k, check } => {
            let l = check.as_deref().map(read_complex).transpose()?;
            collapse_cmd(g, &read_complex(k)?, l.as_ref())
        }
        Verb::Chromatic { k } => {
            let (m, c) = chromatic_number(&read_complex(k)?)?;
            if g.json {
                return to_json(&ChromaticOut { chromatic_number: m, colors: c.colors });
            }
            Ok(format!("chi = {m}\ncolors: {}\n", join(&c.colors, " ")))
        }
        Verb::PhiCheck { gamma, involution, sigma, target } => {
            let cert = certificate(&read_complex(gamma)?, involution, sigma)?;
            let free = match target {
                Some(t) => Some(induced_involution(&cert, &HomComplex::build(&cert.gamma, &read_complex(t)?, cap)?)?),
                None => None,
            };
            if g.json {
                return to_json(&PhiOut { certificate: cert.summary(), involution_on_hom: free });
            }
            let mut s = String::new();
            let pairs: Vec<String> = cert.restriction.iter().map(|(x, y)| format!("{x}->{y}")).collect();
            let _ = writeln!(s, "Phi_{} complex: PASS", cert.d());
            let _ = writeln!(s, "invariant simplex {} restriction {}", cert.sigma, pairs.join(" "));
            let _ = writeln!(s, "holonomy order {} label {}", cert.holonomy_order, cert.holonomy_label);
            let _ = writeln!(s, "membership path: {}", join(&cert.membership_path, " "));
            if let Some(r) = free {
                let _ = writeln!(s, "involution on Hom: {} cells, involution {}, free {}", r.cells, r.is_involution, r.free);
            }
            Ok(s)
        }
        Verb::LovaszBound { gamma, k, involution, sigma } => {
            let cert = certificate(&read_complex(gamma)?, involution, sigma)?;
            let r = lovasz_bound_report(&cert, &read_complex(k)?, cap, g.pi1)?;
            if g.json {
                return to_json(&r);
            }
            let mut s = String::new();
            let _ = writeln!(s, "Hom cells: {:?}", r.hom_cells);
            let _ = writeln!(s, "reduced homology: {}", r.homology);
            let _ = writeln!(s, "connectivity k = {} ({:?})", show_k(r.connectivity_k), r.certificate_level);
            let _ = writeln!(s, "{}", r.parity_note);
            match r.claimed_bound {
                Some(b) => {
                    let _ = writeln!(s, "bound: chi >= {b} [{}]", r.level_note);
                }
                None => s.push_str("no bound derivable\n"),
            }
            let _ = writeln!(s, "chi = {} (consistent: {})", r.chromatic_number, r.consistent);
            Ok(s)
        }
        Verb::TwoIota { r, n } => {
            let rep = two_iota_star_check(*r, *n, cap)?;
            if g.json {
                return to_json(&rep);
            }
            let mut s = String::new();
            let _ = writeln!(s, "Hom(C{}, K{}): {}", 2 * r + 1, n, rep.source_homology);
            let _ = writeln!(s, "Hom(K2, K{}): {}", n, rep.target_homology);
            if rep.vacuous {
                s.push_str("source is empty: vacuous\n");
            }
            let bad: Vec<usize> = rep.commutes.iter().filter(|c| !c.1).map(|c| c.0).collect();
            let _ = writeln!(
                s,
                "flip after iota agrees with iota: {}",
                if bad.is_empty() { "PASS".into() } else { format!("FAIL in {bad:?}") }
            );
            if let Some(d) = rep.flip_degree {
                let _ = writeln!(s, "flip degree on H{}: {d}", n - 2);
            }
            match rep.iota_zero_on_free {
                Some(z) => {
                    let _ = writeln!(s, "iota_* = 0 on H{}: {}", n - 2, if z { "PASS" } else { "FAIL" });
                }
                None => {
                    let _ = writeln!(s, "{}", rep.parity_note);
                }
            }
            if !rep.pass {
                return Err(Failure::Lib(Error::Internal(format!("two-iota check failed\n{s}"))));
            }
            Ok(s)
        }
    }
}

fn read_text(p: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
}

fn read_complex(p: &Path) -> Result<SimplicialComplex, Failure> {
    Ok(SimplicialComplex::from_json(&read_text(p)?)?)
}

fn parse_ids(s: &str) -> Result<Vec<usize>, Failure> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("not a vertex list: {s:?}")))).collect()
}

fn parse_simplex(s: &str) -> Result<Simplex, Failure> {
    Ok(Simplex::new(parse_ids(s)?)?)
}

fn parse_walk(s: &str) -> Result<Vec<Simplex>, Failure> {
    s.split(';').map(parse_simplex).collect()
}

fn certificate(gamma: &SimplicialComplex, involution: &str, sigma: &str) -> Result<PhiCertificate, Failure> {
    let omega = VertexMap::new(gamma, gamma, parse_ids(involution)?)?;
    Ok(phi_d_certify(gamma, &omega, &parse_simplex(sigma)?)?)
}

fn to_json<T: Serialize>(t: &T) -> Outcome {
    let mut s = serde_json::to_string_pretty(t).map_err(|e| Failure::Lib(Error::Json(e)))?;
    s.push('\n');
    Ok(s)
}

fn join<T: std::fmt::Display>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn show_k(k: i64) -> String {
    if k == i64::MAX {
        "infinite (all reduced homology vanishes)".into()
    } else {
        k.to_string()
    }
}

#[derive(Serialize)]
struct ChromaticOut {
    chromatic_number: usize,
    colors: Vec<usize>,
}

#[derive(Serialize)]
struct PhiOut {
    certificate: homcx::chromatic::PhiSummary,
    involution_on_hom: Option<homcx::chromatic::InvolutionReport>,
}

fn build_hom(g: &Global, k: &SimplicialComplex, l: &SimplicialComplex) -> Outcome {
    let h = HomComplex::build(k, l, Some(g.cap))?;
    if g.json {
        let mut s = h.to_json_pretty();
        s.push('\n');
        return Ok(s);
    }
    let mut s = String::new();
    let _ = writeln!(s, "cells by dimension: {}", join(&h.counts(), " "));
    let _ = writeln!(s, "euler characteristic: {}", h.euler_characteristic());
    for layer in h.cells() {
        for c in layer {
            let parts: Vec<String> = c.to_lists().iter().map(|x| format!("{{{}}}", join(x, ","))).collect();
            let _ = writeln!(s, "{} {}", c.dim(), parts.join(" "));
        }
    }
    Ok(s)
}

#[derive(Serialize)]
struct HomologyOut<'a> {
    homology: &'a homcx::HomologyGroups,
    connectivity: homcx::Connectivity,
}

fn homology_cmd(g: &Global, file: &Path, reduced: bool, connectivity: bool) -> Outcome {
    let text = read_text(file)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(Error::Json)?;
    let hom = if value.get("cells").is_some() { Some(HomComplex::from_json(&text, Some(g.cap))?) } else { None };
    let chains = match &hom {
        Some(h) => chains_of(h)?,
        None => simplicial_chains(&SimplicialComplex::from_json(&text)?),
    };
    let hg = homology(&chains, reduced || connectivity);
    let conn = connectivity.then(|| {
        let mut c = connectivity_estimate(&hg, None);
        if g.pi1 && c.k >= 1 {
            if let Some(h) = &hom {
                let t = edge_path_group_trivial(h, DEFAULT_TIETZE_PASSES);
                c.pi1_trivial = Some(t);
                if t {
                    c.level = homcx::chain::CertificateLevel::HomologyPi1;
                }
            }
        }
        c
    });
    if g.json {
        return match conn {
            Some(c) => to_json(&HomologyOut { homology: &hg, connectivity: c }),
            None => to_json(&hg),
        };
    }
    let mut s = format!("{hg}\n");
    let _ = writeln!(s, "{:>4} {:>6}  torsion", "dim", "betti");
    if hg.minus_one > 0 {
        let _ = writeln!(s, "{:>4} {:>6}  -", -1, hg.minus_one);
    }
    for d in &hg.dims {
        let t = if d.torsion.is_empty() { "-".to_string() } else { join(&d.torsion, ",") };
        let _ = writeln!(s, "{:>4} {:>6}  {t}", d.dim, d.betti);
    }
    if let Some(c) = conn {
        let pi1 = match c.pi1_trivial {
            None => "not attempted",
            Some(true) => "trivial",
            Some(false) => "not shown trivial",
        };
        let _ = writeln!(s, "connectivity k = {} (certificate {:?}, fundamental group {pi1})", show_k(c.k), c.level);
    }
    Ok(s)
}

#[derive(Serialize)]
struct GeneratorOut {
    perm: BTreeMap<String, usize>,
    path: Vec<Simplex>,
}

#[derive(Serialize)]
struct HolonomyOut {
    base: Simplex,
    order: usize,
    generators: Vec<GeneratorOut>,
    label: String,
}

fn holonomy_cmd(g: &Global, k: &SimplicialComplex, sigma: &Simplex) -> Outcome {
    let group = holonomy_group(k, sigma)?;
    let out = HolonomyOut {
        base: sigma.clone(),
        order: group.order(),
        generators: group
            .generators()
            .iter()
            .map(|p| GeneratorOut { perm: p.pairs().into_iter().map(|(x, y)| (x.to_string(), y)).collect(), path: p.path().to_vec() })
            .collect(),
        label: group.label().to_string(),
    };
    if g.json {
        return to_json(&out);
    }
    let mut s = format!("order {}, label {}\n", out.order, out.label);
    if !group.covers_whole_dual_graph() {
        s.push_str("dual graph is disconnected; only the component of the base was used\n");
    }
    for p in group.generators() {
        let pairs: Vec<String> = p.pairs().iter().map(|(x, y)| format!("{x}->{y}")).collect();
        let _ = writeln!(s, "generator {} along {}", pairs.join(" "), join(p.path(), " "));
    }
    Ok(s)
}

#[derive(Serialize)]
struct TransportOut {
    source: Simplex,
    target: Simplex,
    pairs: Vec<(usize, usize)>,
    fibre_cells: Vec<usize>,
    fibre_homology: String,
    induced: Vec<homcx::InducedMap>,
}

fn transport_cmd(g: &Global, l: &SimplicialComplex, p: &Projectivity) -> Outcome {
    let fib = fibre(l, p.source().len(), Some(g.cap))?;
    let m = chain_map_of(&transport_map(&fib, p)?)?;
    let hf = IntegralHomology::compute(&chains_of(&fib)?, true);
    let induced = (0..hf.groups().dims.len()).map(|d| induced_on_homology(&m, &hf, &hf, d)).collect::<Result<Vec<_>, _>>()?;
    let out = TransportOut {
        source: p.source().clone(),
        target: p.target().clone(),
        pairs: p.pairs(),
        fibre_cells: fib.counts(),
        fibre_homology: hf.groups().to_string(),
        induced,
    };
    if g.json {
        return to_json(&out);
    }
    let pairs: Vec<String> = out.pairs.iter().map(|(x, y)| format!("{x}->{y}")).collect();
    let mut s = format!("projectivity {} -> {}: {}\n", out.source, out.target, pairs.join(" "));
    let _ = writeln!(s, "fibre cells: {}", join(&out.fibre_cells, " "));
    let _ = writeln!(s, "fibre reduced homology: {}", out.fibre_homology);
    for m in &out.induced {
        if m.free.is_empty() && m.torsion.is_empty() {
            continue;
        }
        let _ = writeln!(s, "H{}: free {:?} torsion {:?}", m.dim, m.free, m.torsion);
    }
    Ok(s)
}

#[derive(Serialize)]
struct CollapseOut {
    outcome: SearchOutcome<homcx::collapse::CollapseSequence>,
    checks: Vec<homcx::collapse::CollapseReport>,
    /// Homology of Hom(K, L) against Hom(core, L), per dimension.
    deleted_product_agrees: Option<bool>,
}

fn collapse_cmd(g: &Global, k: &SimplicialComplex, l: Option<&SimplicialComplex>) -> Outcome {
    let outcome = is_tree_like(k, g.budget)?;
    let mut checks = Vec::new();
    let mut agrees = None;
    if let (SearchOutcome::Found(seq), Some(l)) = (&outcome, l) {
        let (stages, core) = seq.stages(k)?;
        for (cx, step) in &stages {
            checks.push(verify_collapse_equivalence(cx, Some(step), l, Some(g.cap))?);
        }
        let whole = homology(&chains_of(&HomComplex::build(k, l, Some(g.cap))?)?, false);
        let last = homology(&chains_of(&HomComplex::build(&core, l, Some(g.cap))?)?, false);
        agrees = Some(whole.same_groups(&last));
    }
    let out = CollapseOut { outcome, checks, deleted_product_agrees: agrees };
    if g.json {
        return to_json(&out);
    }
    let mut s = String::new();
    match &out.outcome {
        SearchOutcome::Found(seq) => {
            let _ = writeln!(s, "tree-like: {} elementary vertex collapses to {}", seq.steps.len(), seq.core);
            for st in &seq.steps {
                let _ = writeln!(s, "remove {} along {} (v = {}, witness {} via u = {})", st.removed, st.retained, st.v, st.witness, st.u);
            }
        }
        SearchOutcome::Exhausted => s.push_str("not tree-like (search exhausted)\n"),
        SearchOutcome::BudgetExceeded => s.push_str("unknown: search budget exceeded\n"),
    }
    for (i, r) in out.checks.iter().enumerate() {
        let _ = writeln!(s, "step {}: cells {} -> {}", i + 1, join(&r.cells_before, " "), join(&r.cells_after, " "));
        let _ = writeln!(s, "{:>4}  {:<12} {:<12}", "dim", "before", "after");
        for row in &r.rows {
            let _ = writeln!(s, "{:>4}  {:<12} {:<12}", row.dim, row.before.to_string(), row.after.to_string());
        }
    }
    if let Some(a) = out.deleted_product_agrees {
        let _ = writeln!(s, "Hom(K, L) and Hom(core, L) homology agree: {}", if a { "PASS" } else { "FAIL" });
    }
    Ok(s)
}
