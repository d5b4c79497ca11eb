use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use jjalg::algebra::Algebra;
use jjalg::coflag::{coflag_census, CoflagDatum};
use jjalg::cohomology::{
    abelian_cocycles, coflag_cohomology, coflag_lambdas, global_h2_abelian, codim1_census, CocycleSpace, LambdaList,
};
use jjalg::crossed::{are_cohomologous, recognize_extension, Cohomologous, CrossedData, CrossedSampler};
use jjalg::enumerate::{commutative_count, jj_algebras};
use jjalg::families::{make, FamilySpec};
use jjalg::field::FieldSpec;
use jjalg::format::{
    format_matrix, format_vector, parse_algebra, parse_crossed, parse_matrix, parse_terms, parse_vector, print_algebra,
    print_crossed, ParseOptions,
};
use jjalg::frobenius::{invariant_form_space, is_frobenius, is_invariant, FrobeniusVerdict, NotFrobeniusWitness, RadicalSide};
use jjalg::iso::{automorphisms, fingerprint, homothety_classes, isomorphic, IsoVerdict, NonIsoWitness};
use jjalg::linalg::{Matrix, Subspace};
use jjalg::modrep::{canonical_actions, ActionData};
use jjalg::yangbaxter::{build_r, check_qybe, qybe_leibniz_equivalence, PairSource};

use crate::report::{join, opt, Report};
use crate::{
    ActionKind, CensusArgs, CensusKind, Cli, CoflagArgs, CohomologyArgs, Command, CrossedArgs, FamilyArgs, FamilyName,
    GlobalOpts, QybeArgs,
};

pub const ERROR_EXIT: u8 = 3;

/// Census of JJ algebras refuses inputs with more candidate tables than this.
const JJ_CENSUS_LIMIT: u64 = 1_000_000;

struct Ctx {
    opts: GlobalOpts,
    seed: u64,
}

impl Ctx {
    fn load(&self, path: &Path) -> Result<Algebra> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        parse_algebra(&text, ParseOptions { symmetrize: self.opts.symmetrize })
            .with_context(|| format!("parsing {}", path.display()))
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn emit(&self, report: &Report) -> Result<()> {
        report.emit(self.opts.format)?;
        Ok(())
    }
}

pub fn run(cli: Cli) -> Result<u8> {
    let seed = match std::env::var("JJ_SEED") {
        Ok(s) => s.trim().parse().with_context(|| format!("JJ_SEED must be an unsigned integer, got `{s}`"))?,
        Err(_) => cli.global.seed,
    };
    if cli.global.jobs > 0 {
        // Fails only if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.global.jobs).build_global();
    }
    let ctx = Ctx { opts: cli.global, seed };
    match cli.command {
        Command::Check { file } => check(&ctx, &file),
        Command::Analyze { file } => analyze(&ctx, &file),
        Command::Frobenius { file, trials, exhaustive_cap } => frobenius(&ctx, &file, trials, exhaustive_cap),
        Command::Qybe(args) => qybe(&ctx, &args),
        Command::Crossed(args) => crossed(&ctx, &args),
        Command::Cohomology(args) => cohomology(&ctx, &args),
        Command::Coflag(args) => coflag(&ctx, &args),
        Command::Iso { a, b, cap } => iso(&ctx, &a, &b, cap),
        Command::Aut { file, cap, list } => aut(&ctx, &file, cap, list),
        Command::Family(args) => family(&ctx, &args),
        Command::Census(args) => census(&ctx, &args),
    }
}

pub fn parse_field(text: &str) -> Result<FieldSpec> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    let digits = t.strip_prefix("Fp").or_else(|| t.strip_prefix('F')).unwrap_or(&t);
    let p: u64 = digits
        .parse()
        .map_err(|_| anyhow!("unrecognized field `{text}`; use Q, F5, Fp5 or \"Fp 5\""))?;
    Ok(FieldSpec::prime(p)?)
}

fn check(ctx: &Ctx, file: &Path) -> Result<u8> {
    let a = ctx.load(file)?;
    let commutative = a.is_commutative();
    let defects = a.jacobi_defects();
    let jj = commutative && defects.is_empty();
    let mut r = Report::new();
    r.put("field", a.field()).put("dim", a.dim()).put("commutative", commutative);
    if !commutative {
        let (i, j) = (0..a.dim())
            .flat_map(|i| (0..a.dim()).map(move |j| (i, j)))
            .find(|&(i, j)| a.product(i, j) != a.product(j, i))
            .expect("non-commutative table has an asymmetric pair");
        r.put("noncommuting_pair", format!("{},{}", a.names()[i], a.names()[j]));
    }
    r.put("jacobi_defects", defects.len());
    if let Some(d) = defects.first() {
        let (i, j, l) = d.triple;
        let n = a.names();
        r.put("first_jacobi_defect", format!("{},{},{}", n[i], n[j], n[l]));
        r.put("jacobi_residual", a.format_vector(&d.residual));
    }
    r.put("jacobi_jordan", jj);
    ctx.emit(&r)?;
    Ok(if jj { 0 } else { 1 })
}

fn subspace_terms(a: &Algebra, s: &Subspace) -> String {
    if s.is_zero() {
        return "0".into();
    }
    s.basis().iter().map(|v| a.format_vector(v)).collect::<Vec<_>>().join("; ")
}

fn analyze(ctx: &Ctx, file: &Path) -> Result<u8> {
    let a = ctx.load(file)?;
    let rep = a.analyze();
    let mut r = Report::new();
    r.put("field", a.field())
        .put("dim", a.dim())
        .put("commutative", rep.commutative)
        .put("jacobi_jordan", rep.is_jacobi_jordan())
        .put("leibniz", rep.leibniz)
        .put("jordan", opt(rep.jordan))
        .put("derived_series", join(&rep.derived_series_dims))
        .put("lower_central_series", join(&rep.lower_central_dims))
        .put("solvability_step", opt(rep.solvability_step))
        .put("nilpotency_step", opt(rep.nilpotency_step))
        .put("center_dim", rep.center.dim())
        .put("center", subspace_terms(&a, &rep.center))
        .put("metabelian", rep.metabelian);
    ctx.emit(&r)?;
    Ok(0)
}

fn frobenius(ctx: &Ctx, file: &Path, trials: u64, exhaustive_cap: u64) -> Result<u8> {
    let a = ctx.load(file)?;
    a.require_jacobi_jordan()?;
    let space = invariant_form_space(&a);
    let mut r = Report::new();
    r.put("form_space_dim", space.dim());
    match is_frobenius(&a, trials, ctx.seed, exhaustive_cap) {
        FrobeniusVerdict::Frobenius(b) => {
            r.put("verdict", "frobenius")
                .put("form", format_matrix(&b))
                .put("determinant", b.determinant()?)
                .put("invariant", is_invariant(&a, &b));
        }
        FrobeniusVerdict::NotFrobenius(NotFrobeniusWitness::Radical { vector, side }) => {
            let side = match side {
                RadicalSide::Left => "left",
                RadicalSide::Right => "right",
            };
            r.put("verdict", "not_frobenius").put("radical_witness", a.format_vector(&vector)).put("radical_side", side);
        }
        FrobeniusVerdict::NotFrobenius(NotFrobeniusWitness::ExhaustedSearch { candidates }) => {
            r.put("verdict", "not_frobenius").put("candidates_checked", candidates);
        }
        FrobeniusVerdict::Undetermined { trials } => {
            r.put("verdict", "undetermined").put("trials", trials);
        }
    }
    ctx.emit(&r)?;
    Ok(0)
}

fn qybe(ctx: &Ctx, args: &QybeArgs) -> Result<u8> {
    let a = ctx.load(&args.file)?;
    let k = a.field();
    let mut r = Report::new();
    if args.sweep {
        let mut rng = ctx.rng();
        let source = if k.is_finite() {
            PairSource::Exhaustive
        } else {
            PairSource::Sampled { count: args.samples, rng: &mut rng }
        };
        let rep = qybe_leibniz_equivalence(&a, source)?;
        r.put("leibniz", rep.leibniz)
            .put("nilpotent_prediction", opt(rep.nilpotent_prediction))
            .put("pairs_checked", rep.pairs_checked)
            .put("leibniz_counterexamples", rep.leibniz_counterexamples.len())
            .put("nilpotency_counterexamples", rep.nilpotency_counterexamples.len())
            .put("consistent", rep.consistent());
        ctx.emit(&r)?;
        return Ok(0);
    }
    let alpha = k.parse_scalar(&args.alpha)?;
    let central = match &args.central {
        Some(text) => parse_terms(k, a.names(), text).context("parsing --central")?,
        None => a
            .leibniz_center()
            .basis()
            .first()
            .cloned()
            .ok_or(jjalg::Error::EmptyCenter)?,
    };
    let yb = build_r(&a, &alpha, &central)?;
    let res = check_qybe(&yb);
    r.put("alpha", &alpha)
        .put("central", a.format_vector(&central))
        .put("r_size", format!("{}x{}", yb.r.rows(), yb.r.cols()))
        .put("qybe", res.holds)
        .put("residual_rank", res.residual_rank)
        .put("leibniz", a.is_leibniz());
    if let Some(path) = &args.export {
        let text: String = (0..yb.r.rows())
            .map(|i| yb.r.row(i).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ") + "\n")
            .collect();
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
        r.put("exported", path.display());
    }
    ctx.emit(&r)?;
    Ok(0)
}

fn resolve_relative(dir: &Path, reference: &str) -> PathBuf {
    let candidate = dir.join(reference);
    if candidate.exists() {
        candidate
    } else {
        PathBuf::from(reference)
    }
}

fn crossed(ctx: &Ctx, args: &CrossedArgs) -> Result<u8> {
    if let Some(base_path) = &args.sample_over {
        return sample_crossed(ctx, args, base_path);
    }
    let file = args.file.as_ref().expect("clap requires a file without --sample-over");
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let dir = file.parent().unwrap_or(Path::new(".")).to_path_buf();
    let d = parse_crossed(&text, |reference| {
        let path = resolve_relative(&dir, reference);
        let body = fs::read_to_string(&path).map_err(|e| jjalg::Error::BadParameters(format!("{}: {e}", path.display())))?;
        parse_algebra(&body, ParseOptions { symmetrize: ctx.opts.symmetrize })
    })
    .with_context(|| format!("parsing {}", file.display()))?;
    let validation = d.validate();
    let mut r = Report::new();
    r.put("base_dim", d.base.dim()).put("fiber_dim", d.fiber_dim).put("valid", validation.is_valid());
    if !validation.is_valid() {
        r.put("failing_axioms", join(validation.failing_axioms()))
            .put("violations", validation.violations.len());
        ctx.emit(&r)?;
        return Ok(1);
    }
    let e = d.crossed_product()?;
    r.put("product_dim", e.dim()).put("product_jacobi_jordan", e.is_jacobi_jordan());
    if let Some(path) = &args.product {
        fs::write(path, print_algebra(&e)).with_context(|| format!("writing {}", path.display()))?;
        r.put("product_written", path.display());
    }
    if args.roundtrip {
        let mut rng = ctx.rng();
        let k = d.field();
        let t = Matrix::from_rows(
            k,
            (0..d.fiber_dim).map(|_| (0..d.base.dim()).map(|_| k.random(&mut rng)).collect()).collect(),
        )
        .unwrap_or_else(|_| Matrix::zeros(k, d.fiber_dim, d.base.dim()));
        let rec = recognize_extension(&e, &d.base, &d.projection(), &d.section_with(&t))?;
        let verdict = are_cohomologous(&d, &rec.data, args.cap)?;
        r.put("section_shift", format_matrix(&t));
        match verdict {
            Cohomologous::Yes(m) => r.put("roundtrip", "cohomologous").put("r", format_matrix(&m)),
            Cohomologous::No => r.put("roundtrip", "not_cohomologous"),
            Cohomologous::Unknown => r.put("roundtrip", "unknown"),
        };
    }
    ctx.emit(&r)?;
    Ok(0)
}

fn sample_crossed(ctx: &Ctx, args: &CrossedArgs, base_path: &Path) -> Result<u8> {
    let base = ctx.load(base_path)?;
    let mut sampler = CrossedSampler::new(base.field(), args.cap)?;
    let mut rng = ctx.rng();
    let d: CrossedData = sampler.sample_over(&base, args.fiber, &mut rng)?;
    let reference = match &args.output {
        Some(out) if out.parent().map(|p| p.canonicalize().ok()) == base_path.parent().map(|p| p.canonicalize().ok()) => {
            base_path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default()
        }
        _ => base_path.canonicalize().unwrap_or_else(|_| base_path.to_path_buf()).display().to_string(),
    };
    let text = print_crossed(&d, &reference);
    match &args.output {
        Some(out) => {
            fs::write(out, &text).with_context(|| format!("writing {}", out.display()))?;
            let mut r = Report::new();
            r.put("valid", d.is_crossed_system()).put("written", out.display());
            ctx.emit(&r)?;
        }
        None => print!("{text}"),
    }
    Ok(0)
}

fn put_space(r: &mut Report, prefix: &str, s: &CocycleSpace) {
    r.put(format!("{prefix}z2_dim"), s.z2.dim())
        .put(format!("{prefix}b2_dim"), s.b2.dim())
        .put(format!("{prefix}h2_dim"), s.h2_dim)
        .put(format!("{prefix}classes"), opt(s.class_count()));
}

/// λ list and per-λ cohomology; `h2_dim` is the `λ = 0` component.
fn coflag_report(a: &Algebra, r: &mut Report) -> Result<(LambdaList, Vec<CocycleSpace>)> {
    let list = coflag_lambdas(a)?;
    let spaces: Vec<CocycleSpace> = list.lambdas.iter().map(|l| coflag_cohomology(a, l)).collect::<jjalg::Result<_>>()?;
    r.put("lambda_count", list.lambdas.len()).put("lambda_complete", list.complete);
    if let Some(zero) = list.lambdas.iter().position(|l| l.is_zero()) {
        r.put("h2_dim", spaces[zero].h2_dim);
    }
    for (i, (lam, s)) in list.lambdas.iter().zip(&spaces).enumerate() {
        let p = format!("lambda.{}.", i + 1);
        r.put(format!("lambda.{}", i + 1), format_vector(&lam.coeffs));
        put_space(r, &p, s);
    }
    Ok((list, spaces))
}

fn cohomology(ctx: &Ctx, args: &CohomologyArgs) -> Result<u8> {
    let a = ctx.load(&args.file)?;
    let mut r = Report::new();
    if args.coflag {
        coflag_report(&a, &mut r)?;
    } else if let Some(m) = args.global {
        let rep = global_h2_abelian(&a, m, args.cap)?;
        r.put("fiber_dim", m)
            .put("module_structures", rep.components.len())
            .put("abelian_classes", rep.abelian_classes);
        match &rep.nonabelian {
            Some(v) => r.put("nonabelian_fibers", v.len()),
            None => r.put("nonabelian_fibers", "not_computed"),
        };
        r.put("total_classes", rep.total_classes()).put("complete", rep.cap_exceeded.is_none());
    } else {
        let action = match args.action {
            ActionKind::Trivial => ActionData::trivial(a.clone(), args.fiber),
            ActionKind::Regular => canonical_actions(&a)?.regular,
            ActionKind::Dual => canonical_actions(&a)?.dual,
        };
        let s = abelian_cocycles(&a, &action)?;
        r.put("fiber_dim", action.space_dim);
        put_space(&mut r, "", &s);
    }
    ctx.emit(&r)?;
    Ok(0)
}

fn write_algebra(dir: &Path, name: &str, a: &Algebra) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, print_algebra(a)).with_context(|| format!("writing {}", path.display()))
}

fn coflag(ctx: &Ctx, args: &CoflagArgs) -> Result<u8> {
    let a = ctx.load(&args.file)?;
    let mut r = Report::new();
    let (list, spaces) = coflag_report(&a, &mut r)?;
    if let Some(dir) = &args.out_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let mut written = 0usize;
        for (i, (lam, s)) in list.lambdas.iter().zip(&spaces).enumerate() {
            // ϑ = 0 followed by cocycles spanning a complement of the coboundaries.
            let mut reps = vec![jjalg::linalg::zero_vector(a.field(), s.z2.ambient_dim())];
            let mut span = s.b2.clone();
            for v in s.z2.basis() {
                if !span.contains_vector(v) {
                    span = span.sum(&Subspace::span(a.field(), v.len(), [v.clone()]))?;
                    reps.push(v.clone());
                }
            }
            for (j, v) in reps.iter().enumerate() {
                let d = CoflagDatum::from_upper(a.clone(), lam.clone(), v)?;
                write_algebra(dir, &format!("coflag_l{}_{}.jja", i + 1, j), &jjalg::coflag::build_coflag_algebra(&d))?;
                written += 1;
            }
        }
        r.put("representatives_written", written);
    }
    if args.census {
        let c = coflag_census(&a, args.cap)?;
        r.put("census.data", c.data).put("census.gh2_classes", c.gh2_classes).put("census.cp_classes", c.cp_classes);
        for (i, d) in c.cp_representatives.iter().enumerate() {
            r.put(format!("cp.{}.lambda", i + 1), format_vector(&d.lam.coeffs))
                .put(format!("cp.{}.theta", i + 1), format_matrix(&d.gram()));
            if let Some(dir) = &args.out_dir {
                write_algebra(dir, &format!("cp_{}.jja", i + 1), &jjalg::coflag::build_coflag_algebra(d))?;
            }
        }
    }
    ctx.emit(&r)?;
    Ok(0)
}

fn iso(ctx: &Ctx, a: &Path, b: &Path, cap: u64) -> Result<u8> {
    let (a, b) = (ctx.load(a)?, ctx.load(b)?);
    let mut r = Report::new();
    let code = match isomorphic(&a, &b, cap)? {
        IsoVerdict::Yes(t) => {
            r.put("isomorphic", "yes").put("map", format_matrix(&t));
            0
        }
        IsoVerdict::No(NonIsoWitness::Invariant(name)) => {
            r.put("isomorphic", "no").put("invariant", name);
            1
        }
        IsoVerdict::No(NonIsoWitness::Exhausted { nodes }) => {
            r.put("isomorphic", "no").put("nodes", nodes);
            1
        }
        IsoVerdict::Unknown => {
            r.put("isomorphic", "unknown");
            2
        }
    };
    ctx.emit(&r)?;
    Ok(code)
}

fn aut(ctx: &Ctx, file: &Path, cap: u64, list: bool) -> Result<u8> {
    let a = ctx.load(file)?;
    let g = automorphisms(&a, cap)?;
    let mut r = Report::new();
    r.put("order", g.order()).put("closed", g.verify_closure());
    if list {
        for (i, m) in g.elements.iter().enumerate() {
            r.put(format!("aut.{}", i + 1), format_matrix(m));
        }
    }
    ctx.emit(&r)?;
    Ok(0)
}

fn family_spec(args: &FamilyArgs, k: FieldSpec) -> Result<FamilySpec> {
    let need = |v: &Option<String>, flag: &str| v.clone().ok_or_else(|| anyhow!("this family needs --{flag}"));
    let mat = |v: &Option<String>, flag: &str| -> Result<Matrix> { Ok(parse_matrix(k, &need(v, flag)?)?) };
    let n = || args.n.ok_or_else(|| anyhow!("this family needs --n"));
    Ok(match args.name {
        FamilyName::Abelian => FamilySpec::Abelian { n: n()? },
        FamilyName::Heisenberg => FamilySpec::Heisenberg { n: n()? },
        FamilyName::VFV0 => FamilySpec::VFV0 { f: mat(&args.f, "f")?, v0: parse_vector(k, &need(&args.v0, "v0")?)? },
        FamilyName::AXyz => FamilySpec::AXyz { x: mat(&args.x, "x")?, y: mat(&args.y, "y")?, z: mat(&args.z, "z")? },
        FamilyName::A12 => FamilySpec::A12,
        FamilyName::HeisAbc => FamilySpec::HeisAbc { a: mat(&args.a, "a")?, b: mat(&args.b, "b")?, c: mat(&args.c, "c")? },
        FamilyName::ATheta => FamilySpec::ATheta { theta: mat(&args.theta, "theta")? },
        FamilyName::Jt => FamilySpec::Jt { n: n()?, t: args.t.ok_or_else(|| anyhow!("this family needs --t"))? },
        FamilyName::KnXV0 => FamilySpec::KnXV0 { x: mat(&args.x, "x")?, v0: parse_vector(k, &need(&args.v0, "v0")?)? },
    })
}

fn family(ctx: &Ctx, args: &FamilyArgs) -> Result<u8> {
    let k = parse_field(&args.field)?;
    let spec = family_spec(args, k)?;
    let a = make(&spec, k)?;
    let text = print_algebra(&a);
    match &args.output {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            let mut r = Report::new();
            r.put("family", spec.name())
                .put("field", k)
                .put("dim", a.dim())
                .put("jacobi_jordan", a.is_jacobi_jordan())
                .put("written", path.display());
            ctx.emit(&r)?;
        }
        None => print!("{text}"),
    }
    Ok(0)
}

fn census(ctx: &Ctx, args: &CensusArgs) -> Result<u8> {
    let k = parse_field(&args.field)?;
    let mut r = Report::new();
    match args.kind {
        CensusKind::Homothety => {
            let reps = homothety_classes(k, args.dim, args.cap)?;
            r.put("classes", reps.len());
            for (i, m) in reps.iter().enumerate() {
                r.put(format!("class.{}.form", i + 1), format_matrix(m)).put(format!("class.{}.rank", i + 1), m.rank());
            }
        }
        CensusKind::Codim1 => {
            let c = codim1_census(k, args.dim)?;
            r.put("square_zero_maps", c.square_zero_maps)
                .put("pairs", c.pairs)
                .put("formula_classes", c.formula_classes)
                .put("orbit_classes", c.orbit_classes)
                .put("agree", c.formula_classes == c.orbit_classes);
        }
        CensusKind::Jj => {
            let total = commutative_count(k, args.dim).ok_or(jjalg::Error::NotEnumerable)?;
            if total > JJ_CENSUS_LIMIT {
                bail!("{total} commutative tables exceed the census limit of {JJ_CENSUS_LIMIT}");
            }
            let (count, classes, unknown) = jj_census(k, args.dim, args.cap)?;
            r.put("jj_algebras", count).put("classes", classes.len()).put("undecided_pairs", unknown);
            for (i, a) in classes.iter().enumerate() {
                let fp = fingerprint(a);
                r.put(format!("class.{}.derived_series", i + 1), join(&fp.derived_series_dims))
                    .put(format!("class.{}.center_dim", i + 1), fp.center_dim);
            }
        }
    }
    ctx.emit(&r)?;
    Ok(0)
}

/// Greedy class representatives; each candidate is compared with the
/// existing representatives in parallel and joins the first match in order.
fn jj_census(k: FieldSpec, dim: usize, cap: u64) -> Result<(usize, Vec<Algebra>, usize)> {
    let mut reps: Vec<Algebra> = Vec::new();
    let mut count = 0;
    let mut unknown = 0;
    for a in jj_algebras(k, dim) {
        count += 1;
        let verdicts: Vec<IsoVerdict> = reps.par_iter().map(|b| isomorphic(&a, b, cap)).collect::<jjalg::Result<_>>()?;
        if verdicts.iter().any(IsoVerdict::is_yes) {
            continue;
        }
        unknown += verdicts.iter().filter(|v| matches!(v, IsoVerdict::Unknown)).count();
        reps.push(a);
    }
    Ok((count, reps, unknown))
}
