use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use super::document::{load_decomposition, Metadata, RepDocument};
use super::experiment::{ergodic_experiment, ExperimentConfig};
use super::svg::{detect_pairings, render_svg, Model, RenderDomain, SidePair, SvgOptions};
use super::CliError;
use crate::character_dynamics::{char_to_rep, goldman_reduce, kappa, Character, SampleBox};
use crate::covering_group::{euler_class, SurfaceRep};
use crate::domain_builder::{build_pants, build_pentagon, good_rep, good_search, pants_from_lengths, PantsDomain, Pentagon, SearchParams};
use crate::isometries::{commutator, FixedData, IsoKind, Isometry};
use crate::plane_geometry::{
    collar_width, set_geom_tolerance, BoundaryPoint, GeodesicPolygon, HPoint, Orientation, ValidityReport, Vertex,
};
use crate::surface_glue::{
    assemble_extremal, glue_genus2, glue_hyperbolic, models, split_genus2, Assembly, Genus2Rep, GlueParams, GluedDomain,
    PieceDomain, Split,
};

const CSV_HELP: &str = "CSV columns: t,index,x,y,z,type,good,depth,stations,ms\n  \
type     ELLIPTIC, PANTS or UNDECIDED (reduction out of budget)\n  \
good     whether a certificate was found\n  \
depth    certificate depth, or the search depth when none was found\n  \
stations stations examined on the certifying basis, or the budget\n  \
ms       search wall time, filled only with --timing\n\
The first line is a '#' comment carrying the schema version and flags.";

#[derive(Parser, Debug)]
#[command(name = "hypcone", version, about = "Hyperbolic cone structures with prescribed holonomy")]
pub struct Cli {
    /// Geometric tolerance; overrides HF_TOLERANCE.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify the isometry with row-major entries A B C D.
    Classify {
        #[arg(num_args = 4, allow_negative_numbers = true, required = true, value_names = ["A", "B", "C", "D"])]
        entries: Vec<f64>,
    },
    /// Euler class of a representation.
    Euler {
        #[arg(long)]
        rep: PathBuf,
    },
    /// κ(x, y, z) = x² + y² + z² − xyz − 2.
    Kappa {
        #[arg(allow_negative_numbers = true)]
        x: f64,
        #[arg(allow_negative_numbers = true)]
        y: f64,
        #[arg(allow_negative_numbers = true)]
        z: f64,
    },
    /// Decide whether a character is pants-type or elliptic-type.
    Reduce {
        #[command(flatten)]
        character: CharacterArgs,
        #[arg(long, default_value_t = 100_000)]
        max_iter: usize,
    },
    /// A one-holed torus representation with the given character.
    Char2rep {
        #[command(flatten)]
        character: CharacterArgs,
    },
    /// The symmetric representation with a valid pentagon near the commutator axis.
    GoodRep(GoodRepArgs),
    /// Pentagon at a basepoint, or a search for a certifying basis.
    Pentagon(PentagonArgs),
    /// Right-angled octagon for a pair of pants.
    Pants(PantsArgs),
    /// Glue a genus-2 representation with Euler class ±1 into one octagon.
    Glue2(Glue2Args),
    /// Assemble an extremal representation from a pants or torus decomposition.
    Assemble(AssembleArgs),
    /// Certificate rate on elliptic-type characters of a level set.
    #[command(after_help = CSV_HELP)]
    ErgodicExp(ErgodicArgs),
    /// Draw domains as SVG.
    Render(RenderArgs),
}

#[derive(Args, Debug)]
pub struct CharacterArgs {
    #[arg(allow_negative_numbers = true)]
    x: f64,
    #[arg(allow_negative_numbers = true)]
    y: f64,
    #[arg(allow_negative_numbers = true)]
    z: f64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OrientationArg {
    Ccw,
    Cw,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Ccw => Orientation::Ccw,
            OrientationArg::Cw => Orientation::Cw,
        }
    }
}

#[derive(Args, Debug)]
pub struct GoodRepArgs {
    /// Boundary trace t > 2.
    #[arg(long)]
    trace: f64,
    /// Distance bound from the axis; defaults to half the collar width.
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long, value_enum, default_value = "ccw")]
    orientation: OrientationArg,
}

#[derive(Args, Debug)]
pub struct PentagonArgs {
    /// Representation using generators G0 and H0.
    #[arg(long)]
    rep: PathBuf,
    /// Basepoint X Y in the upper half-plane; searches when absent.
    #[arg(long, num_args = 2, allow_negative_numbers = true)]
    base: Option<Vec<f64>>,
    /// Search radius; defaults to the collar width of the commutator.
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long, default_value_t = 12)]
    depth: usize,
    #[arg(long, default_value_t = 64)]
    stations: usize,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "pants_input")]
pub struct PantsArgs {
    /// Three-holed sphere representation (generators C0, C1, C2).
    #[arg(long, group = "pants_input")]
    rep: Option<PathBuf>,
    /// Boundary lengths L1 L2 L3.
    #[arg(long, num_args = 3, group = "pants_input")]
    lengths: Option<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Example {
    Elliptic,
    Parabolic,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "glue_input")]
pub struct Glue2Args {
    /// Genus-2 representation.
    #[arg(long, group = "glue_input")]
    rep: Option<PathBuf>,
    /// Built-in example representation.
    #[arg(long, value_enum, group = "glue_input")]
    example: Option<Example>,
    /// Glue the good representation of this trace to a Fuchsian one-holed torus.
    #[arg(long, group = "glue_input")]
    hyperbolic_trace: Option<f64>,
    #[arg(long, default_value_t = 64)]
    stations: usize,
    #[arg(long, default_value_t = 30)]
    halvings: usize,
}

#[derive(Args, Debug)]
pub struct AssembleArgs {
    #[arg(long)]
    rep: PathBuf,
    /// Decomposition JSON: pieces with generator words and curve edges.
    #[arg(long)]
    decomp: PathBuf,
}

#[derive(Args, Debug)]
pub struct ErgodicArgs {
    /// Level t > 2.
    #[arg(long)]
    trace: f64,
    #[arg(long)]
    samples: usize,
    #[arg(long, default_value_t = 12)]
    depth: usize,
    #[arg(long, default_value_t = 64)]
    stations: usize,
    #[arg(long)]
    seed: u64,
    /// Half-width of the square sampled for (x, y).
    #[arg(long = "box", default_value_t = 5.0)]
    half_width: f64,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Fill the ms column (makes output run-dependent).
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    #[arg(long, value_enum, default_value = "disk")]
    model: Model,
    /// Draw side-pairing arrows.
    #[arg(long)]
    arrows: bool,
    #[arg(long, default_value_t = 800.0)]
    size: f64,
    /// SVG destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    source: RenderSource,
}

#[derive(Subcommand, Debug)]
pub enum RenderSource {
    /// Only the model boundary.
    Empty,
    GoodRep(GoodRepArgs),
    Pentagon(PentagonArgs),
    Pants(PantsArgs),
    Glue2(Glue2Args),
    Assemble(AssembleArgs),
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Precondition(format!("{}: {e}", path.display())))
}

fn load_rep(path: &Path, err: &mut dyn Write) -> Result<SurfaceRep, CliError> {
    let doc = RepDocument::from_json(&read(path)?, &path.display().to_string())?;
    let mut warnings = Vec::new();
    let rep = doc.to_surface_rep(&mut warnings)?;
    for w in warnings {
        writeln!(err, "warning: {w}")?;
    }
    Ok(rep)
}

fn need(rep: &SurfaceRep, names: &[&str]) -> Result<Vec<Isometry>, CliError> {
    names
        .iter()
        .map(|n| rep.generator(n).ok_or_else(|| CliError::Precondition(format!("representation has no generator {n}"))))
        .collect()
}

fn point_json(p: HPoint) -> Value {
    json!([p.x(), p.y()])
}

fn vertex_json(v: Vertex) -> Value {
    match v {
        Vertex::Finite(p) => point_json(p),
        Vertex::Ideal(BoundaryPoint::Real(x)) => json!({ "ideal": x }),
        Vertex::Ideal(BoundaryPoint::Infinity) => json!({ "ideal": "inf" }),
    }
}

fn polygon_json(poly: &GeodesicPolygon, report: &ValidityReport) -> Value {
    json!({
        "vertices": poly.vertices.iter().map(|v| vertex_json(*v)).collect::<Vec<_>>(),
        "orientation": report.orientation.map(Orientation::as_str),
        "interior_angles": report.interior_angles,
        "area": report.area,
        "valid": report.is_valid(),
        "reasons": report.reasons,
    })
}

fn pentagon_json(p: &Pentagon) -> Value {
    json!({
        "basepoint": point_json(p.basepoint),
        "polygon": polygon_json(&p.polygon, &p.report),
        "valid": p.is_valid(),
        "corner_angle": p.corner_angle,
        "twist": p.twist,
        "corner_residual": p.corner_residual(),
        "pairing_residual": p.pairing_residual,
    })
}

fn torus_doc(g: Isometry, h: Isometry, description: String) -> Result<RepDocument, CliError> {
    let rep = SurfaceRep::new(1, 1, vec![g, h, commutator(&g, &h).inverse()])?;
    Ok(RepDocument::from_surface_rep(&rep, Metadata { description: Some(description), seed: None }))
}

fn print_json(out: &mut dyn Write, v: &Value) -> Result<(), CliError> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("values serialize"))?;
    Ok(())
}

fn good_rep_cmd(a: &GoodRepArgs) -> Result<(crate::domain_builder::GoodRep, Value), CliError> {
    let eps = match a.epsilon {
        Some(e) => e,
        None => collar_width(a.trace)? / 2.0,
    };
    let r = good_rep(a.trace, eps, a.orientation.into())?;
    let doc = torus_doc(r.g, r.h, format!("good representation, trace {}", a.trace))?;
    let v = json!({
        "trace": a.trace,
        "epsilon": r.epsilon,
        "rep": serde_json::to_value(&doc).expect("documents serialize"),
        "pentagon": pentagon_json(&r.pentagon),
    });
    Ok((r, v))
}

fn pentagon_cmd(a: &PentagonArgs, err: &mut dyn Write) -> Result<(Pentagon, Value), CliError> {
    let rep = load_rep(&a.rep, err)?;
    let gh = need(&rep, &["G0", "H0"])?;
    let (g, h) = (gh[0], gh[1]);
    if let Some(b) = &a.base {
        let p = build_pentagon(&g, &h, HPoint::try_new(b[0], b[1])?);
        let v = json!({ "pentagon": pentagon_json(&p) });
        return Ok((p, v));
    }
    let epsilon = match a.epsilon {
        Some(e) => e,
        None => collar_width(commutator(&g, &h).trace().abs())?,
    };
    let params = SearchParams { epsilon, depth: a.depth, stations: a.stations, ..Default::default() };
    let cert = good_search(&g, &h, &params)?;
    let v = json!({
        "certificate": {
            "g_word": cert.g_word.render(["G0", "H0"]),
            "h_word": cert.h_word.render(["G0", "H0"]),
            "depth": cert.depth,
            "station": cert.station,
            "offset": cert.offset,
            "axis_distance": cert.axis_distance,
            "bases_tried": cert.bases_tried,
            "character": cert.character.coords(),
            "epsilon": epsilon,
        },
        "pentagon": pentagon_json(&cert.pentagon),
    });
    Ok((cert.pentagon, v))
}

fn pants_cmd(a: &PantsArgs, err: &mut dyn Write) -> Result<(PantsDomain, Value), CliError> {
    let (c1, c2) = match (&a.rep, &a.lengths) {
        (Some(path), _) => {
            let rep = load_rep(path, err)?;
            if (rep.genus, rep.boundary) != (0, 3) {
                return Err(CliError::Precondition("pants need genus 0 with 3 boundary components".into()));
            }
            (rep.c(0), rep.c(1))
        }
        (None, Some(l)) => pants_from_lengths(l[0], l[1], l[2])?,
        (None, None) => unreachable!("clap requires one input"),
    };
    let p = build_pants(&c1, &c2)?;
    let v = json!({
        "c": p.c.iter().map(|c| c.entries()).collect::<Vec<_>>(),
        "octagon": polygon_json(&p.octagon, &p.report),
        "pairings": p.pairings.iter().map(|s| json!({
            "element": format!("C{}", s.element),
            "from": [vertex_json(s.from.0), vertex_json(s.from.1)],
            "to": [vertex_json(s.to.0), vertex_json(s.to.1)],
        })).collect::<Vec<_>>(),
        "pairing_residual": p.pairing_residual,
        "reflection_residual": p.reflection_residual(),
        "euler_certificate": p.euler_certificate,
    });
    Ok((p, v))
}

fn glued_json(d: &GluedDomain, split: Option<&Split>) -> Value {
    let cone = d.cone_euler();
    json!({
        "case": split.map_or("HYPERBOLIC", |s| s.case.as_str()),
        "mirrored": split.map(|s| s.mirrored),
        "swapped": split.map(|s| s.swapped),
        "thetas": split.map(|s| [s.thetas.0, s.thetas.1]),
        "regions": split.map(|s| [s.regions.0.to_string(), s.regions.1.to_string()]),
        "octagon": polygon_json(&d.octagon, &d.report),
        "cone_angle": d.cone_angle,
        "area": d.area,
        "euler_certificate": d.euler_certificate,
        "twists": [d.twists.0, d.twists.1],
        "twist_sum": d.twist_sum(),
        "vertex_orbit": d.vertex_orbit,
        "pairing_residual": d.pairing_residual,
        "search_radius": d.search_radius,
        "station": d.station,
        "cone_euler": {
            "chi": cone.chi,
            "orders": cone.orders,
            "predicted": cone.predicted,
            "euler": cone.euler,
            "consistent": cone.consistent,
        },
    })
}

fn glue2_cmd(a: &Glue2Args, err: &mut dyn Write) -> Result<(GluedDomain, Value), CliError> {
    let params = GlueParams { stations: a.stations, halvings: a.halvings };
    if let Some(t) = a.hyperbolic_trace {
        let r = good_rep(t, collar_width(t)? / 2.0, crate::domain_builder::PENTAGON_ORIENTATION)?;
        let (gw, hw) = char_to_rep(models::fuchsian_torus_character(t))?;
        let d = glue_hyperbolic((r.g, r.h, r.basepoint), (Isometry::from_mat(gw)?, Isometry::from_mat(hw)?), t, &params)?;
        let v = glued_json(&d, None);
        return Ok((d, v));
    }
    let rep = match (&a.rep, a.example) {
        (Some(path), _) => Genus2Rep::from_surface_rep(&load_rep(path, err)?)?,
        (None, Some(Example::Elliptic)) => models::elliptic_genus2()?,
        (None, Some(Example::Parabolic)) => models::parabolic_genus2()?,
        (None, None) => unreachable!("clap requires one input"),
    };
    let split = split_genus2(&rep)?;
    let d = glue_genus2(&split, &params)?;
    let v = glued_json(&d, Some(&split));
    Ok((d, v))
}

fn assemble_cmd(a: &AssembleArgs, err: &mut dyn Write) -> Result<(Assembly, Value), CliError> {
    let rep = load_rep(&a.rep, err)?;
    let dec = load_decomposition(&read(&a.decomp)?, &a.decomp.display().to_string())?;
    let asm = assemble_extremal(&rep, &dec)?;
    let v = json!({
        "mirrored": asm.mirrored,
        "total_euler": asm.total_euler,
        "piece_sum": asm.piece_sum,
        "consistent": asm.is_consistent(),
        "pieces": asm.pieces.iter().map(|p| json!({
            "kind": p.kind,
            "euler": p.euler,
            "vertices": p.polygon.vertices.iter().map(|v| vertex_json(*v)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "edges": asm.edges.iter().map(|e| json!({
            "curve": e.curve,
            "pieces": e.pieces,
            "axis_shared": e.axis_shared,
            "sides": e.sides,
            "opposite_sides": e.opposite_sides,
        })).collect::<Vec<_>>(),
    });
    Ok((asm, v))
}

fn ergodic_cmd(a: &ErgodicArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let cfg = ExperimentConfig {
        t: a.trace,
        samples: a.samples,
        depth: a.depth,
        stations: a.stations,
        seed: a.seed,
        bounds: SampleBox::square(a.half_width),
        timing: a.timing,
    };
    let summary = match &a.out {
        Some(path) => {
            let mut file = std::io::BufWriter::new(fs::File::create(path)?);
            ergodic_experiment(&cfg, Some(&mut file))?
        }
        None => ergodic_experiment(&cfg, Some(out))?,
    };
    let line = format!(
        "# summary elliptic_count={} pants_count={} good_count={} rate={}",
        summary.elliptic_count,
        summary.pants_count,
        summary.good_count,
        summary.rate_string()
    );
    writeln!(err, "{line}")?;
    if a.out.is_some() {
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn single(label: &str, polygon: GeodesicPolygon, markers: bool) -> RenderDomain {
    RenderDomain { label: label.to_string(), polygon, right_angle_markers: markers }
}

fn pairs_within(domain: usize, polygon: &GeodesicPolygon, elements: &[(String, Isometry)]) -> Vec<SidePair> {
    let isos: Vec<Isometry> = elements.iter().map(|e| e.1).collect();
    detect_pairings(polygon, &isos)
        .into_iter()
        .map(|(e, i, j)| SidePair { label: elements[e].0.clone(), from: (domain, i), to: (domain, j) })
        .collect()
}

fn named(names: &[&str], elements: &[Isometry]) -> Vec<(String, Isometry)> {
    names.iter().map(|n| n.to_string()).zip(elements.iter().copied()).collect()
}

fn render_cmd(a: &RenderArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let (domains, pairs) = match &a.source {
        RenderSource::Empty => (vec![], vec![]),
        RenderSource::GoodRep(args) => {
            let (r, _) = good_rep_cmd(args)?;
            let p = r.pentagon;
            let pairs = pairs_within(0, &p.polygon, &named(&["G0", "H0"], &[p.g, p.h]));
            (vec![single("pentagon", p.polygon, false)], pairs)
        }
        RenderSource::Pentagon(args) => {
            let (p, _) = pentagon_cmd(args, err)?;
            let pairs = pairs_within(0, &p.polygon, &named(&["G0", "H0"], &[p.g, p.h]));
            (vec![single("pentagon", p.polygon, false)], pairs)
        }
        RenderSource::Pants(args) => {
            let (p, _) = pants_cmd(args, err)?;
            let pairs = pairs_within(0, &p.octagon, &named(&["C0", "C1", "C2"], &p.c));
            (vec![single("pants", p.octagon, true)], pairs)
        }
        RenderSource::Glue2(args) => {
            let (d, _) = glue2_cmd(args, err)?;
            let v = &d.octagon.vertices;
            // The shared diagonal runs from vertex 0 to vertex 4.
            let halves = [
                GeodesicPolygon::new(v[0..5].to_vec()),
                GeodesicPolygon::new(v[4..8].iter().chain(&v[0..1]).copied().collect()),
            ];
            let place = |k: usize| if k < 4 { (0, k) } else { (1, k - 4) };
            let pairs = detect_pairings(&d.octagon, &d.pairings)
                .into_iter()
                .map(|(e, i, j)| SidePair { label: format!("A{e}"), from: place(i), to: place(j) })
                .collect();
            let [h0, h1] = halves;
            (vec![single("piece 0", h0, false), single("piece 1", h1, false)], pairs)
        }
        RenderSource::Assemble(args) => {
            let (asm, _) = assemble_cmd(args, err)?;
            let mut pairs = Vec::new();
            let mut domains = Vec::new();
            for (i, p) in asm.pieces.iter().enumerate() {
                let names: Vec<String> = (0..p.generators.len()).map(|k| format!("P{i}.{k}")).collect();
                let elements: Vec<(String, Isometry)> = names.into_iter().zip(p.generators.iter().copied()).collect();
                pairs.extend(pairs_within(i, &p.polygon, &elements));
                domains.push(single(&format!("piece {i}"), p.polygon.clone(), matches!(p.domain, PieceDomain::Pants(_))));
            }
            (domains, pairs)
        }
    };
    let svg = render_svg(&domains, &pairs, &SvgOptions { model: a.model, arrows: a.arrows, size: a.size });
    match &a.out {
        Some(path) => fs::write(path, svg)?,
        None => out.write_all(svg.as_bytes())?,
    }
    Ok(())
}

fn classify_cmd(entries: &[f64], out: &mut dyn Write) -> Result<(), CliError> {
    let a = Isometry::new(entries[0], entries[1], entries[2], entries[3])?;
    let class = a.classify();
    writeln!(out, "type: {}", class.kind.label())?;
    writeln!(out, "trace: {}", a.trace())?;
    match class.kind {
        IsoKind::Elliptic { angle } => writeln!(out, "angle: {angle}")?,
        IsoKind::Hyperbolic { length } => writeln!(out, "length: {length}")?,
        IsoKind::Parabolic { sense } => writeln!(out, "sense: {}", if sense.sign() > 0 { "+" } else { "-" })?,
        IsoKind::Identity => {}
    }
    let bp = |x: BoundaryPoint| match x {
        BoundaryPoint::Real(x) => x.to_string(),
        BoundaryPoint::Infinity => "inf".to_string(),
    };
    match a.fixed_data() {
        FixedData::Everything => {}
        FixedData::Center(p) => writeln!(out, "center: {} {}", p.x(), p.y())?,
        FixedData::Point(x) => writeln!(out, "fixed_point: {}", bp(x))?,
        FixedData::Axis { axis, attracting } => {
            let (u, v) = axis.endpoints();
            writeln!(out, "axis: {} {}", bp(u), bp(v))?;
            writeln!(out, "attracting: {}", bp(attracting))?;
        }
    }
    if class.near_parabolic {
        writeln!(out, "near_parabolic: true")?;
    }
    Ok(())
}

/// Runs one parsed command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    if let Some(t) = cli.tolerance {
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::Precondition(format!("tolerance must be positive, got {t}")));
        }
        set_geom_tolerance(t);
    }
    match &cli.command {
        Command::Classify { entries } => classify_cmd(entries, out),
        Command::Euler { rep } => {
            let rep = load_rep(rep, err)?;
            writeln!(out, "euler_class: {}", euler_class(&rep)?)?;
            writeln!(out, "euler_characteristic: {}", rep.euler_characteristic())?;
            Ok(())
        }
        Command::Kappa { x, y, z } => {
            writeln!(out, "{}", kappa(*x, *y, *z))?;
            Ok(())
        }
        Command::Reduce { character: c, max_iter } => {
            let r = goldman_reduce(Character::new(c.x, c.y, c.z), *max_iter)?;
            let [x, y, z] = r.witness.coords();
            writeln!(out, "type: {}", r.kind.as_str())?;
            writeln!(out, "witness: {x} {y} {z}")?;
            let moves: Vec<String> = r.moves.iter().map(|m| m.to_string()).collect();
            writeln!(out, "moves: {}", moves.join(" "))?;
            Ok(())
        }
        Command::Char2rep { character: c } => {
            let ch = Character::new(c.x, c.y, c.z);
            let (g, h) = char_to_rep(ch)?;
            let doc = torus_doc(Isometry::from_mat(g)?, Isometry::from_mat(h)?, format!("character {ch}"))?;
            writeln!(out, "{}", doc.to_json())?;
            Ok(())
        }
        Command::GoodRep(a) => print_json(out, &good_rep_cmd(a)?.1),
        Command::Pentagon(a) => print_json(out, &pentagon_cmd(a, err)?.1),
        Command::Pants(a) => print_json(out, &pants_cmd(a, err)?.1),
        Command::Glue2(a) => print_json(out, &glue2_cmd(a, err)?.1),
        Command::Assemble(a) => print_json(out, &assemble_cmd(a, err)?.1),
        Command::ErgodicExp(a) => ergodic_cmd(a, out, err),
        Command::Render(a) => render_cmd(a, out, err),
    }
}
