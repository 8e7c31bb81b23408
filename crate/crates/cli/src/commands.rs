use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use branchix::branching::{compute_branching, BranchingMatrix, BranchingOptions, TypeRegistry};
use branchix::poly::eval_fraction;
use branchix::reference::{cp_symbolic, export, reference_matrix};
use branchix::trigroup::DEFAULT_GUARD;
use branchix::verify::{
    abelian_diagonal_law, build_report, class_equation, column_sum_law, empirical_cp, interpolate_aligned,
    match_registry, oracle_commuting_probability, reference_degree, Timings, VerifyReport, ACCEPTANCE_GRID,
};
use branchix::{Family, GroupSpec};
use log::warn;

use crate::args::{parse_group, Cli, Command, CpArgs, ExportArgs, Format, GroupArgs, ReferenceAction, VerifyArgs};
use crate::cache::{Cache, CacheKey, Lookup, Payload};
use crate::output::{ComputeOutput, GridError, GridReport, InterpolateOutput, OUTPUT_SCHEMA_VERSION};
use crate::{exit, CliError};

/// Alternate representatives re-checked per type by `verify`.
const WELL_DEFINED_SAMPLES: usize = 2;

struct Ctx {
    guard: u64,
    cache: Option<Cache>,
}

impl Ctx {
    fn options(&self) -> BranchingOptions {
        BranchingOptions {
            guard: self.guard,
            ..BranchingOptions::default()
        }
    }

    /// Registry and matrix of one group, from the cache when valid.
    fn registry(&self, family: Family, n: usize, q: u32) -> Result<(TypeRegistry, BranchingMatrix, u64), CliError> {
        let spec = GroupSpec::new(family, n, q)?;
        spec.guarded_order(self.guard)?;
        let key = CacheKey::new(family, n, q);
        if let Some(cache) = &self.cache {
            match cache.load(&key) {
                Lookup::Hit(p) => return Ok((p.registry, p.matrix, 0)),
                Lookup::Miss => {}
                Lookup::Corrupt(e) => warn!("ignoring cache entry {}: {e}; recomputing", cache.path(&key).display()),
            }
        }
        let t = Instant::now();
        let (registry, matrix) = compute_branching(&spec, &self.options())?;
        let ms = t.elapsed().as_millis() as u64;
        if let Some(cache) = &self.cache {
            let payload = Payload {
                registry: registry.clone(),
                matrix: matrix.clone(),
            };
            if let Err(e) = cache.store(&key, &payload) {
                warn!("could not write cache entry {}: {e}", cache.path(&key).display());
            }
        }
        Ok((registry, matrix, ms))
    }
}

/// Runs a parsed command line, writing results to `out`. Returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> i32 {
    let ctx = Ctx {
        guard: cli.guard.unwrap_or(DEFAULT_GUARD),
        cache: if cli.no_cache {
            None
        } else {
            cli.cache_dir.map(Cache::new)
        },
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return exit::USAGE;
        }
        // Fails only if the global pool already exists in this process.
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            warn!("--threads ignored: {e}");
        }
    }
    let result = dispatch(&ctx, cli.command, out);
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn dispatch(ctx: &Ctx, command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Compute { group, out: path } => compute(ctx, &group, path.as_deref(), out),
        Command::Verify(a) => verify(ctx, &a, out),
        Command::Cp(a) => cp(ctx, &a, out),
        Command::Interpolate {
            family,
            n,
            qs,
            degree,
            format,
        } => interpolate(ctx, family, n, &qs, degree, format, out),
        Command::Reference {
            action: ReferenceAction::Export(a),
        }
        | Command::ReferenceExport(a) => reference_export(&a, out),
        Command::OracleCp { group, k } => oracle_cp(&group, k, out),
    }
}

fn write_json<T: serde::Serialize>(value: &T, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::internal(e.to_string()))?;
    s.push('\n');
    match path {
        Some(p) => fs::write(p, s)?,
        None => out.write_all(s.as_bytes())?,
    }
    Ok(())
}

fn compute(ctx: &Ctx, g: &GroupArgs, path: Option<&Path>, out: &mut dyn Write) -> Result<i32, CliError> {
    let (registry, matrix, _) = ctx.registry(g.family, g.n, g.q)?;
    let invariants = vec![
        column_sum_law(&registry)?,
        class_equation(&registry),
        abelian_diagonal_law(&registry),
    ];
    let doc = ComputeOutput::new(&registry, &matrix, &invariants);
    write_json(&doc, path, out)?;
    if doc.invariant_checks.all() {
        Ok(exit::OK)
    } else {
        for r in invariants.iter().filter(|r| !r.passed) {
            eprintln!("invariant failed: {}: {}", r.name, r.failures.join("; "));
        }
        Ok(exit::INTERNAL)
    }
}

fn verify_one(ctx: &Ctx, family: Family, n: usize, q: u32, no_timings: bool) -> Result<VerifyReport, CliError> {
    let (registry, _, ms) = ctx.registry(family, n, q)?;
    let mut report = build_report(&registry, ms, WELL_DEFINED_SAMPLES, ctx.guard)?;
    if no_timings {
        report.timings = Timings::default();
    }
    Ok(report)
}

fn verify(ctx: &Ctx, a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if !a.all {
        let (family, n, q) = match (a.family, a.n, a.q) {
            (Some(f), Some(n), Some(q)) => (f, n, q),
            _ => return Err(CliError::usage("--family, --n and --q are required without --all")),
        };
        let report = verify_one(ctx, family, n, q, a.no_timings)?;
        if let Some(p) = &a.report {
            write_json(&report, Some(p), out)?;
        }
        match a.format {
            Format::Json => write_json(&report, None, out)?,
            Format::Text => out.write_all(report.to_text().as_bytes())?,
        }
        return Ok(if report.passed() { exit::OK } else { exit::MISMATCH });
    }

    let mut reports = Vec::new();
    let mut errors = Vec::new();
    for (family, n, primes) in ACCEPTANCE_GRID {
        for &q in primes {
            match verify_one(ctx, family, n, q, a.no_timings) {
                Ok(r) => {
                    if a.format == Format::Text {
                        out.write_all(r.to_text().as_bytes())?;
                    }
                    reports.push(r);
                }
                Err(e) => {
                    let group = format!("{}_{n}", family.name().to_uppercase());
                    if a.format == Format::Text {
                        writeln!(out, "{group} q={q}: ERROR {}", e.message)?;
                    }
                    errors.push(GridError {
                        group,
                        q,
                        error: e.message,
                    });
                }
            }
        }
    }
    let passed_count = reports.iter().filter(|r| r.passed()).count();
    let grid = GridReport {
        schema_version: OUTPUT_SCHEMA_VERSION,
        passed: errors.is_empty() && passed_count == reports.len(),
        reports,
        errors,
    };
    if let Some(p) = &a.report {
        write_json(&grid, Some(p), out)?;
    }
    match a.format {
        Format::Json => write_json(&grid, None, out)?,
        Format::Text => writeln!(
            out,
            "{passed_count}/{} grid points passed",
            grid.reports.len() + grid.errors.len()
        )?,
    }
    Ok(if grid.passed { exit::OK } else { exit::MISMATCH })
}

fn group_name(family: Family, n: usize) -> String {
    format!("{}_{n}", family.name().to_uppercase())
}

fn cp(ctx: &Ctx, a: &CpArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if !(2..=5).contains(&a.k) {
        return Err(branchix::Error::UnsupportedK(a.k).into());
    }
    let name = group_name(a.family, a.n);
    let Some(q) = a.q else {
        let s = cp_symbolic(a.family, a.n, a.k)?;
        writeln!(
            out,
            "cp_{}({name}) printed:     ({})/({})",
            a.k, s.printed_numerator, s.printed_denominator
        )?;
        writeln!(
            out,
            "cp_{}({name}) from matrix: ({})/({})",
            a.k, s.numerator, s.denominator
        )?;
        if s.agrees {
            writeln!(out, "identity holds")?;
            return Ok(exit::OK);
        }
        let diff = &(&s.numerator * &s.printed_denominator) - &(&s.printed_numerator * &s.denominator);
        writeln!(out, "identity fails: cross difference {diff}")?;
        return Ok(exit::MISMATCH);
    };

    let spec = GroupSpec::new(a.family, a.n, q)?;
    let mut values: Vec<(&str, String)> = Vec::new();
    match cp_symbolic(a.family, a.n, a.k) {
        Ok(s) => {
            let q64 = u64::from(q);
            let printed = eval_fraction(&s.printed_numerator, &s.printed_denominator, q64)
                .map_or_else(|| "undefined".to_string(), |v| v.to_string());
            values.push(("printed", printed));
            let derived = eval_fraction(&s.numerator, &s.denominator, q64).expect("group order is nonzero");
            values.push(("matrix", derived.to_string()));
        }
        Err(branchix::Error::UnsupportedGroup(_)) => {}
        Err(e) => return Err(e.into()),
    }
    let (_, matrix, _) = ctx.registry(a.family, a.n, q)?;
    let empirical = empirical_cp(&matrix, a.k)?;
    values.push(("empirical", empirical.to_string()));
    if a.oracle {
        values.push(("oracle", oracle_commuting_probability(&spec, a.k)?.to_string()));
    }
    writeln!(out, "cp_{}({name}(F_{q})) = {empirical}", a.k)?;
    for (src, v) in &values {
        writeln!(out, "  {src:<9} {v}")?;
    }
    let agree = values.iter().all(|(_, v)| *v == values[0].1);
    if agree {
        writeln!(out, "all sources agree")?;
        Ok(exit::OK)
    } else {
        writeln!(out, "sources disagree")?;
        Ok(exit::MISMATCH)
    }
}

fn interpolate(
    ctx: &Ctx,
    family: Family,
    n: usize,
    qs: &[u32],
    degree: Option<usize>,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let reference = reference_matrix(family, n)?;
    let degree = degree.unwrap_or_else(|| reference_degree(&reference));
    if qs.len() < degree + 1 {
        return Err(branchix::Error::InsufficientPoints {
            needed: degree + 1,
            got: qs.len(),
        }
        .into());
    }
    let mut data = Vec::with_capacity(qs.len());
    for &q in qs {
        let (registry, matrix, _) = ctx.registry(family, n, q)?;
        let m = match_registry(&registry, &reference)?;
        data.push((matrix, m));
    }
    let samples: Vec<_> = data.iter().map(|(m, r)| (m, r)).collect();
    let result = interpolate_aligned(&reference, &samples, degree)?;
    match format {
        Format::Json => write_json(&InterpolateOutput::new(result.clone()), None, out)?,
        Format::Text => {
            let mut s = String::new();
            for e in &result.entries {
                if e.equal {
                    let _ = writeln!(s, "({}, {}) {}", e.row, e.col, e.polynomial);
                } else {
                    let _ = writeln!(
                        s,
                        "({}, {}) {}  DIFFERS from {}",
                        e.row, e.col, e.polynomial, e.reference
                    );
                }
            }
            let _ = writeln!(s, "{}/{} entries match", result.matching(), result.entries.len());
            out.write_all(s.as_bytes())?;
        }
    }
    Ok(if result.all_equal() { exit::OK } else { exit::MISMATCH })
}

fn reference_export(a: &ExportArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let (family, n) = parse_group(&a.group)
        .ok_or_else(|| CliError::usage(format!("unknown group `{}` (try ut5 or gt4)", a.group)))?;
    let doc = export(family, n)?;
    match a.format {
        Format::Json => write_json(&doc, None, out)?,
        Format::Text => {
            let m = &doc.matrix;
            let mut s = String::new();
            let _ = writeln!(s, "{} reference ({} types)", group_name(family, n), m.dim());
            for (j, col) in m.labels.iter().enumerate() {
                let _ = writeln!(s, "column {col} (centralizer {}):", m.centralizer_order_sources[j]);
                for (i, row) in m.labels.iter().enumerate() {
                    if !m.entries[i][j].is_zero() {
                        let _ = writeln!(s, "  {row}: {}", m.sources[i][j]);
                    }
                }
            }
            for c in &doc.self_checks {
                let _ = writeln!(s, "[{}] {}", if c.passed { "ok" } else { "FAIL" }, c.name);
                for f in &c.failures {
                    let _ = writeln!(s, "    {f}");
                }
            }
            out.write_all(s.as_bytes())?;
        }
    }
    Ok(exit::OK)
}

fn oracle_cp(g: &GroupArgs, k: usize, out: &mut dyn Write) -> Result<i32, CliError> {
    let spec = GroupSpec::new(g.family, g.n, g.q)?;
    let v = oracle_commuting_probability(&spec, k)?;
    writeln!(out, "{v}")?;
    Ok(exit::OK)
}
