//! The three subcommands: validate, check, classify. Each returns the
//! rendered text report, an optional JSON document and the process exit
//! code (0 success / all requested verdicts yes, 1 verdict-no or
//! validation failure, 2 usage error).

use serde::Serialize;

use dirac_core::curvature::{CocycleStatus, CurvatureModel, ThetaVerdict};
use dirac_core::matrix::Matrix;
use dirac_core::scalar::Field;
use dirac_core::search::{classify, EGenerator, Phase, SearchConfig};
use dirac_core::subspace::Subspace;

use crate::problem::{complexify_problem, Problem, TypedProblem};
use crate::render::Namer;
use crate::Failure;

pub struct CommandOutput {
    pub text: String,
    pub json: Option<serde_json::Value>,
    pub exit: i32,
}

fn subspace_rows<K: Field>(s: &Subspace<K>) -> Vec<Vec<String>> {
    s.basis_rows()
        .iter()
        .map(|row| row.iter().map(|x| x.to_string()).collect())
        .collect()
}

fn form_entries<K: Field>(eps: &Matrix<K>) -> Vec<FormEntryOut> {
    let mut out = Vec::new();
    for a in 0..eps.rows() {
        for b in (a + 1)..eps.cols() {
            if !eps[(a, b)].is_zero() {
                out.push(FormEntryOut {
                    i: a + 1,
                    j: b + 1,
                    value: eps[(a, b)].to_string(),
                });
            }
        }
    }
    out
}

// ------------------------------------------------------------------
// validate
// ------------------------------------------------------------------

pub fn cmd_validate(problem: &Problem) -> CommandOutput {
    match problem {
        Problem::Q(tp) => run_validate(tp, "Q"),
        Problem::Qi(tp) => run_validate(tp, "Qi"),
    }
}

fn run_validate<K: Field>(tp: &TypedProblem<K>, field: &str) -> CommandOutput {
    let namer = Namer::new(tp.dim, tp.basis_names.as_deref());
    let mut lines = Vec::new();
    let mut ok = true;

    lines.push(format!("field: {field}, dim: {}", tp.dim));

    match tp.algebra.jacobi_check() {
        Ok(violations) if violations.is_empty() => {
            lines.push("algebra: ok (antisymmetry, Jacobi)".to_string());
        }
        Ok(violations) => {
            ok = false;
            for v in violations {
                lines.push(format!(
                    "algebra: Jacobi violation on ({}, {}, {}), defect {}",
                    namer.vector_name(v.i),
                    namer.vector_name(v.j),
                    namer.vector_name(v.k),
                    namer.vector(&v.defect)
                ));
            }
        }
        Err(e) => {
            ok = false;
            lines.push(format!("algebra: {e}"));
        }
    }

    match tp.algebra.is_subalgebra(&tp.p) {
        Ok(true) => lines.push(if tp.p.dim() == 0 {
            "p: subalgebra ok (zero)".to_string()
        } else {
            format!(
                "p: subalgebra ok, dim {}, {}",
                tp.p.dim(),
                namer.subspace(&tp.p)
            )
        }),
        Ok(false) => {
            ok = false;
            lines.push(format!(
                "p: not a subalgebra ({})",
                namer.subspace(&tp.p)
            ));
        }
        Err(e) => {
            ok = false;
            lines.push(format!("p: {e}"));
        }
    }

    if let Some(model) = &tp.curvature {
        // Construction already enforced antisymmetry and horizontality.
        lines.push(format!(
            "curvature: ok (antisymmetric, horizontal w.r.t. p); torsion-free: {}",
            if model.is_torsion_free() { "yes" } else { "no" }
        ));
    }

    if let Some(grading) = &tp.grading {
        match grading.verify(&tp.algebra) {
            Ok(violations) if violations.is_empty() => {
                lines.push(format!("grading: ok (l = {})", grading.l()));
                match grading.find_grading_element(&tp.algebra) {
                    Ok(element) => lines.push(format!(
                        "grading element: {}{}",
                        namer.vector(&element.vector),
                        if element.unique { "" } else { " (not unique; canonical representative)" }
                    )),
                    Err(_) => lines.push(
                        "grading element: none exists (eigenvalue system inconsistent)"
                            .to_string(),
                    ),
                }
                if let Ok(report) = grading.killing_duality_check(&tp.algebra) {
                    lines.push(format!(
                        "killing duality: {} (rank {}, {})",
                        if report.pass { "pass" } else { "fail" },
                        report.killing_rank,
                        if report.killing_nondegenerate {
                            "nondegenerate"
                        } else {
                            "degenerate"
                        }
                    ));
                }
            }
            Ok(violations) => {
                ok = false;
                for v in violations {
                    lines.push(format!("grading: violation {v:?}"));
                }
            }
            Err(e) => {
                ok = false;
                lines.push(format!("grading: {e}"));
            }
        }
    }

    CommandOutput {
        text: lines.join("\n"),
        json: None,
        exit: if ok { 0 } else { 1 },
    }
}

// ------------------------------------------------------------------
// check
// ------------------------------------------------------------------

#[derive(Clone, Copy, Debug)]
pub struct CheckFlags {
    pub dirac: bool,
    pub poisson: bool,
    pub gcs: bool,
    pub theta: bool,
}

impl CheckFlags {
    /// With no explicit flag the basic Dirac question is asked.
    pub fn normalized(mut self) -> Self {
        if !(self.dirac || self.poisson || self.gcs || self.theta) {
            self.dirac = true;
        }
        self
    }
}

#[derive(Serialize)]
struct CheckVerdictOut {
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

impl CheckVerdictOut {
    fn yes() -> Self {
        Self {
            verdict: "yes".into(),
            reason: None,
        }
    }
    fn no(reason: impl Into<String>) -> Self {
        Self {
            verdict: "no".into(),
            reason: Some(reason.into()),
        }
    }
    fn is_yes(&self) -> bool {
        self.verdict == "yes"
    }
}

#[derive(Serialize)]
struct GcsConditionsOut {
    c1_p_in_e: bool,
    c2_e_plus_conjugate_spans: bool,
    c3_cocycle_zero: bool,
    c4_eps_vanishes_on_p: bool,
    c5_radical_in_p: bool,
    c6_theta_vanishes: bool,
    verdict: bool,
}

#[derive(Serialize)]
struct ChecksOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    dirac: Option<CheckVerdictOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta: Option<CheckVerdictOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    poisson: Option<CheckVerdictOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gcs: Option<CheckVerdictOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gcs_conditions: Option<GcsConditionsOut>,
}

#[derive(Serialize)]
struct CheckOutputJson {
    schema: &'static str,
    field: String,
    dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis_names: Option<Vec<String>>,
    #[serde(rename = "D")]
    d: Vec<Vec<String>>,
    checks: ChecksOut,
    all_requested_yes: bool,
}

pub fn cmd_check(problem: Problem, flags: CheckFlags) -> Result<CommandOutput, Failure> {
    let flags = flags.normalized();
    match problem {
        Problem::Qi(tp) => run_check(&tp, flags, "Qi"),
        Problem::Q(tp) => {
            if flags.gcs {
                // The conjugation questions need ℚ(i); every other verdict
                // is invariant under scalar extension of rational data.
                let complexified = complexify_problem(&tp);
                run_check(&complexified, flags, "Q")
            } else {
                run_check(&tp, flags, "Q")
            }
        }
    }
}

fn run_check<K: Field>(
    tp: &TypedProblem<K>,
    flags: CheckFlags,
    field_label: &str,
) -> Result<CommandOutput, Failure> {
    let namer = Namer::new(tp.dim, tp.basis_names.as_deref());
    let (d, pair) = match (&tp.d, &tp.pair) {
        (Some(d), Some(pair)) => {
            if pair.build_l() != *d {
                return Err(Failure {
                    code: 1,
                    message: "the D block and the E/eps block describe different subspaces"
                        .to_string(),
                });
            }
            (d.clone(), Some(pair))
        }
        (Some(d), None) => (d.clone(), None),
        (None, Some(pair)) => (pair.build_l(), Some(pair)),
        (None, None) => {
            return Err(Failure {
                code: 2,
                message: "check requires a \"D\" block or an \"E\"/\"eps\" block".to_string(),
            })
        }
    };

    let model = match &tp.curvature {
        Some(m) => m.clone(),
        None => CurvatureModel::flat(tp.algebra.clone(), tp.p.clone()).map_err(|e| Failure {
            code: 1,
            message: format!("p: {e}"),
        })?,
    };

    let mut lines = Vec::new();
    let mut checks = ChecksOut {
        dirac: None,
        theta: None,
        poisson: None,
        gcs: None,
        gcs_conditions: None,
    };
    lines.push(format!("D = {}", namer.double_subspace(&d)));

    if flags.dirac {
        let verdict = d.is_dirac_subalgebra(&tp.algebra).map_err(internal)?;
        let out = if verdict.is_yes() {
            CheckVerdictOut::yes()
        } else {
            CheckVerdictOut::no(namer.dirac_verdict(&verdict))
        };
        lines.push(format!("dirac: {}", render_verdict(&out)));
        checks.dirac = Some(out);
    }

    if flags.theta {
        let verdict = model.theta_vanishes_on(&d).map_err(internal)?;
        let out = theta_to_out(&verdict);
        lines.push(format!("theta: {}", render_verdict(&out)));
        checks.theta = Some(out);
    }

    if flags.poisson {
        let report = model.poisson_check(&d).map_err(internal)?;
        let out = if report.verdict {
            CheckVerdictOut::yes()
        } else if !report.dirac_report.verdict {
            CheckVerdictOut::no(render_dirac_report_failure(&namer, &report.dirac_report))
        } else {
            CheckVerdictOut::no(format!(
                "D∩g = {} differs from p = {}",
                namer.subspace(&report.d_cap_g),
                namer.subspace(model.p())
            ))
        };
        lines.push(format!("poisson: {}", render_verdict(&out)));
        checks.poisson = Some(out);
    }

    if flags.gcs {
        let report = model.gcs_check(&d).map_err(internal)?;
        let out = if report.verdict {
            CheckVerdictOut::yes()
        } else if !report.dirac_report.verdict {
            CheckVerdictOut::no(render_dirac_report_failure(&namer, &report.dirac_report))
        } else {
            CheckVerdictOut::no(format!(
                "D∩D̄ has dimension {}, embedded p has dimension {}",
                report.d_cap_dbar.dim(),
                model.p().dim()
            ))
        };
        lines.push(format!("gcs: {}", render_verdict(&out)));
        checks.gcs = Some(out);

        if let Some(pair) = pair {
            let conditions = model.linear_gcs_conditions(pair).map_err(internal)?;
            lines.push(format!(
                "gcs conditions: (1) p⊆E: {} (2) E+Ē=g: {} (3) d_E eps=0: {} (4) eps♯(p)=0: {} (5) radical⊆p: {} (6) theta: {} → {}",
                yn(conditions.c1_p_in_e),
                yn(conditions.c2_e_plus_conj_spans),
                yn(conditions.c3_cocycle.ok()),
                yn(conditions.c4_eps_vanishes_on_p),
                yn(conditions.c5_radical_in_p),
                yn(conditions.c6_theta.vanishes()),
                yn(conditions.verdict)
            ));
            if let CocycleStatus::NotSubalgebra { i, j } = conditions.c3_cocycle {
                lines.push(format!(
                    "  note: E is not a subalgebra (bracket of rows {} and {} escapes)",
                    i + 1,
                    j + 1
                ));
            }
            if let Some(witness) = &conditions.c5_witness {
                lines.push(format!(
                    "  radical witness outside p: {}",
                    namer.vector(witness)
                ));
            }
            checks.gcs_conditions = Some(GcsConditionsOut {
                c1_p_in_e: conditions.c1_p_in_e,
                c2_e_plus_conjugate_spans: conditions.c2_e_plus_conj_spans,
                c3_cocycle_zero: conditions.c3_cocycle.ok(),
                c4_eps_vanishes_on_p: conditions.c4_eps_vanishes_on_p,
                c5_radical_in_p: conditions.c5_radical_in_p,
                c6_theta_vanishes: conditions.c6_theta.vanishes(),
                verdict: conditions.verdict,
            });
        }
    }

    let all_yes = checks
        .dirac
        .iter()
        .chain(&checks.theta)
        .chain(&checks.poisson)
        .chain(&checks.gcs)
        .all(CheckVerdictOut::is_yes);
    lines.push(format!("all requested: {}", yn(all_yes)));

    let json = CheckOutputJson {
        schema: "diracalg.check/1",
        field: field_label.to_string(),
        dim: tp.dim,
        basis_names: tp.basis_names.clone(),
        d: subspace_rows(d.subspace()),
        checks,
        all_requested_yes: all_yes,
    };

    Ok(CommandOutput {
        text: lines.join("\n"),
        json: Some(serde_json::to_value(json).expect("serializable output")),
        exit: if all_yes { 0 } else { 1 },
    })
}

fn internal(e: dirac_core::error::Error) -> Failure {
    Failure {
        code: 1,
        message: format!("check failed: {e}"),
    }
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_verdict(v: &CheckVerdictOut) -> String {
    match &v.reason {
        None => v.verdict.clone(),
        Some(reason) => format!("{} — {}", v.verdict, reason),
    }
}

fn theta_to_out<K: Field>(verdict: &ThetaVerdict<K>) -> CheckVerdictOut {
    match verdict {
        ThetaVerdict::Vanishes => CheckVerdictOut::yes(),
        ThetaVerdict::Witness { triple, value } => CheckVerdictOut::no(format!(
            "theta on basis triple ({}, {}, {}) is {value}",
            triple.0 + 1,
            triple.1 + 1,
            triple.2 + 1
        )),
    }
}

fn render_dirac_report_failure<K: Field>(
    namer: &Namer,
    report: &dirac_core::curvature::DiracStructureReport<K>,
) -> String {
    if !report.dirac.is_yes() {
        format!("not a Dirac subalgebra: {}", namer.dirac_verdict(&report.dirac))
    } else if !report.contains_p {
        match &report.contains_p_witness {
            Some(w) => format!("p is not contained in D: witness {}", namer.vector(w)),
            None => "p is not contained in D".to_string(),
        }
    } else {
        match &report.theta {
            ThetaVerdict::Witness { triple, value } => format!(
                "theta does not vanish: triple ({}, {}, {}) gives {value}",
                triple.0 + 1,
                triple.1 + 1,
                triple.2 + 1
            ),
            ThetaVerdict::Vanishes => "descent criterion failed".to_string(),
        }
    }
}

// ------------------------------------------------------------------
// classify
// ------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct ClassifyOpts {
    pub mode: String,
    pub max: usize,
    pub jobs: usize,
    pub require_poisson: bool,
    pub require_gcs: bool,
}

#[derive(Serialize)]
struct FormEntryOut {
    i: usize,
    j: usize,
    value: String,
}

#[derive(Serialize)]
struct MemberOut {
    eps: Vec<FormEntryOut>,
    representative: String,
    dirac: bool,
    contains_p: bool,
    theta_ok: Option<bool>,
    poisson: bool,
    gcs: Option<bool>,
}

#[derive(Serialize)]
struct FamilyOut {
    #[serde(rename = "E")]
    e: Vec<Vec<String>>,
    eps_basis: Vec<Vec<FormEntryOut>>,
    members: Vec<MemberOut>,
}

#[derive(Serialize)]
struct SummaryOut {
    candidates_examined: usize,
    families: usize,
    members: usize,
    poisson_members: usize,
    gcs_members: usize,
}

#[derive(Serialize)]
struct ClassifyOutputJson {
    schema: &'static str,
    field: String,
    dim: usize,
    generator: String,
    summary: SummaryOut,
    families: Vec<FamilyOut>,
}

fn parse_mode<K: Field>(mode: &str) -> Result<EGenerator<K>, Failure> {
    if mode == "subsets" {
        return Ok(EGenerator::BasisSubsets);
    }
    if let Some(bound) = mode.strip_prefix("grid:") {
        let bound: i64 = bound.parse().map_err(|_| usage_mode(mode))?;
        if bound < 1 {
            return Err(usage_mode(mode));
        }
        return Ok(EGenerator::IntegerGrid { bound });
    }
    Err(usage_mode(mode))
}

fn usage_mode(mode: &str) -> Failure {
    Failure {
        code: 2,
        message: format!("--mode must be \"subsets\" or \"grid:N\" (N ≥ 1), got {mode:?}"),
    }
}

pub fn cmd_classify(problem: Problem, opts: ClassifyOpts) -> Result<CommandOutput, Failure> {
    match problem {
        Problem::Qi(tp) => run_classify(&tp, &opts, "Qi"),
        Problem::Q(tp) => {
            if opts.require_gcs {
                let complexified = complexify_problem(&tp);
                run_classify(&complexified, &opts, "Q")
            } else {
                run_classify(&tp, &opts, "Q")
            }
        }
    }
}

fn run_classify<K: Field>(
    tp: &TypedProblem<K>,
    opts: &ClassifyOpts,
    field_label: &str,
) -> Result<CommandOutput, Failure> {
    let namer = Namer::new(tp.dim, tp.basis_names.as_deref());
    let mut cfg = SearchConfig::new(parse_mode::<K>(&opts.mode)?);
    cfg.require_poisson = opts.require_poisson;
    cfg.require_gcs = opts.require_gcs;
    cfg.curvature = tp.curvature.clone();
    cfg.max_results = opts.max;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Failure {
            code: 1,
            message: format!("cannot build a {}-thread pool: {e}", opts.jobs),
        })?;
    let result = pool
        .install(|| classify(&tp.algebra, &tp.p, &cfg))
        .map_err(|e| Failure {
            code: 1,
            message: format!("classification failed: {e}"),
        })?;

    let mut lines = Vec::new();
    lines.push(format!(
        "generator: {}; candidates examined: {}",
        result.generator, result.summary.candidates_examined
    ));
    for (idx, family) in result.families.iter().enumerate() {
        lines.push(format!(
            "family {}: E = {} (dim {}), eps-space dim {}",
            idx + 1,
            namer.subspace(&family.e),
            family.e.dim(),
            family.eps_basis.len()
        ));
        for member in &family.members {
            let mut flags = vec![
                format!("dirac={}", yn(member.dirac)),
                format!("contains_p={}", yn(member.contains_p)),
                format!("poisson={}", yn(member.poisson)),
            ];
            if let Some(theta) = member.theta_ok {
                flags.push(format!("theta={}", yn(theta)));
            }
            if let Some(gcs) = member.gcs {
                flags.push(format!("gcs={}", yn(gcs)));
            }
            let phase = match member.representative {
                Phase::Canonical => "",
                Phase::TimesI => " (representative i·eps)",
            };
            lines.push(format!(
                "  member: {}{} ; {}",
                namer.form(&member.eps, &family.e),
                phase,
                flags.join(" ")
            ));
        }
    }
    lines.push(format!(
        "summary: {} families, {} members, {} poisson, {} gcs",
        result.summary.families,
        result.summary.members,
        result.summary.poisson_members,
        result.summary.gcs_members
    ));

    let json = ClassifyOutputJson {
        schema: "diracalg.classify/1",
        field: field_label.to_string(),
        dim: tp.dim,
        generator: result.generator.clone(),
        summary: SummaryOut {
            candidates_examined: result.summary.candidates_examined,
            families: result.summary.families,
            members: result.summary.members,
            poisson_members: result.summary.poisson_members,
            gcs_members: result.summary.gcs_members,
        },
        families: result
            .families
            .iter()
            .map(|family| FamilyOut {
                e: subspace_rows(&family.e),
                eps_basis: family.eps_basis.iter().map(|m| form_entries(m)).collect(),
                members: family
                    .members
                    .iter()
                    .map(|member| MemberOut {
                        eps: form_entries(&member.eps),
                        representative: match member.representative {
                            Phase::Canonical => "canonical".to_string(),
                            Phase::TimesI => "times_i".to_string(),
                        },
                        dirac: member.dirac,
                        contains_p: member.contains_p,
                        theta_ok: member.theta_ok,
                        poisson: member.poisson,
                        gcs: member.gcs,
                    })
                    .collect(),
            })
            .collect(),
    };

    Ok(CommandOutput {
        text: lines.join("\n"),
        json: Some(serde_json::to_value(json).expect("serializable output")),
        exit: 0,
    })
}

