//! Desk-scale enumeration of Dirac subalgebras containing a fixed `p`,
//! through the `(E, ε)` parametrization: for each candidate subalgebra
//! `E ⊇ p` the admissible forms are an exact linear solve, and every
//! solution yields a Dirac subalgebra `L(E, ε) ⊇ p` by construction.
//! Emission is still re-verified through the independent predicates.
//!
//! Candidate generation is combinatorial and explicitly incomplete outside
//! the subsets-of-basis mode: enumerating all subalgebras over ℚ is an
//! infinite problem, so results carry the generator tag used.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::algebra::LieAlgebra;
use crate::curvature::CurvatureModel;
use crate::double::DoubleSubspace;
use crate::error::{Error, Result};
use crate::isotropic::IsotropicPair;
use crate::matrix::Matrix;
use crate::scalar::Field;
use crate::subspace::Subspace;

/// Candidate generator for the subalgebras `E` with `p ⊆ E ⊆ g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EGenerator<K: Field> {
    /// Spans of `p` together with subsets of the ambient basis; complete
    /// relative to that combinatorial family.
    BasisSubsets,
    /// Spans of `p` together with sets of vectors whose coordinates are
    /// integers in `[−bound, bound]` (both real and imaginary parts over
    /// ℚ(i)), deduplicated by canonical form.
    IntegerGrid { bound: i64 },
    /// Filtered pass-through of a user-supplied list.
    UserList(Vec<Subspace<K>>),
}

impl<K: Field> EGenerator<K> {
    pub fn tag(&self) -> String {
        match self {
            EGenerator::BasisSubsets => "subsets".to_string(),
            EGenerator::IntegerGrid { bound } => format!("grid:{bound}"),
            EGenerator::UserList(_) => "user".to_string(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig<K: Field> {
    pub e_generator: EGenerator<K>,
    /// Keep only members whose full Poisson verdict holds.
    pub require_poisson: bool,
    /// Keep only members whose full generalized-complex verdict holds;
    /// over ℚ(i) this also probes the representative `i·ε` of each family
    /// line, since the intersection condition is not scaling-invariant
    /// under conjugation.
    pub require_gcs: bool,
    pub curvature: Option<CurvatureModel<K>>,
    /// Cap on emitted families (candidates with at least one surviving
    /// member); must be at least 1.
    pub max_results: usize,
}

impl<K: Field> SearchConfig<K> {
    pub fn new(e_generator: EGenerator<K>) -> Self {
        Self {
            e_generator,
            require_poisson: false,
            require_gcs: false,
            curvature: None,
            max_results: 1000,
        }
    }
}

/// Which representative of the family line a member certifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Canonical,
    TimesI,
}

/// One certified pair `(E, ε)` with its predicate flags. `dirac` and
/// `contains_p` hold by construction and are re-verified before emission;
/// `theta_ok` is present only when a curvature model was configured.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember<K: Field> {
    pub eps: Matrix<K>,
    pub representative: Phase,
    pub dirac: bool,
    pub contains_p: bool,
    pub theta_ok: Option<bool>,
    /// `D ∩ g = p`.
    pub poisson: bool,
    /// `D ∩ D̄ = p` (embedded); `None` over a field without conjugation
    /// structure beyond the identity.
    pub gcs: Option<bool>,
}

/// All admissible forms over one candidate `E`: the canonical basis of the
/// solution space and one evaluated member per basis element (the zero
/// form when the space is trivial).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family<K: Field> {
    pub e: Subspace<K>,
    pub eps_basis: Vec<Matrix<K>>,
    pub members: Vec<FamilyMember<K>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub candidates_examined: usize,
    pub families: usize,
    pub members: usize,
    pub poisson_members: usize,
    pub gcs_members: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationResult<K: Field> {
    pub generator: String,
    pub families: Vec<Family<K>>,
    pub summary: Summary,
}

/// Canonical basis of `{ε ∈ ∧²E* : d_E ε = 0 and ι_X ε = 0 for X ∈ p}`,
/// inside the `k(k−1)/2`-dimensional coordinate space of antisymmetric
/// matrices over the canonical basis of `E`.
pub fn epsilon_space<K: Field>(
    algebra: &LieAlgebra<K>,
    e: &Subspace<K>,
    p: &Subspace<K>,
) -> Result<Vec<Matrix<K>>> {
    algebra.check_dim(e.ambient_dim(), "epsilon space")?;
    if let Some((i, j, _)) = algebra.subalgebra_escape(e)? {
        return Err(Error::NotSubalgebra { i, j });
    }
    if !p.leq(e)? {
        return Err(Error::PNotInE);
    }
    let k = e.dim();
    let vars = k * k.saturating_sub(1) / 2;
    let mut var_index = vec![vec![usize::MAX; k]; k];
    {
        let mut next = 0;
        for a in 0..k {
            for b in (a + 1)..k {
                var_index[a][b] = next;
                next += 1;
            }
        }
    }
    // Adds the coefficients of ε(x, Σ w_d u_d) into an equation row.
    let add_eps_term = |row: &mut Vec<K>, x: usize, w: &[K], sign: i64| {
        for (d, wd) in w.iter().enumerate() {
            if d == x || wd.is_zero() {
                continue;
            }
            let (v, orient) = if x < d {
                (var_index[x][d], 1)
            } else {
                (var_index[d][x], -1)
            };
            let signed = K::from_int(sign * orient) * wd.clone();
            row[v] = row[v].clone() + signed;
        }
    };

    let e_rows = e.basis_rows();
    let mut bracket_coords = vec![vec![Vec::new(); k]; k];
    for a in 0..k {
        for b in (a + 1)..k {
            let br = algebra.bracket(
                &crate::algebra::Vector(e_rows[a].clone()),
                &crate::algebra::Vector(e_rows[b].clone()),
            )?;
            bracket_coords[a][b] = e
                .coordinates_of(&br.0)?
                .expect("E is a subalgebra, checked above");
        }
    }
    let coords = |a: usize, b: usize| -> Vec<K> {
        if a < b {
            bracket_coords[a][b].clone()
        } else if a > b {
            bracket_coords[b][a].iter().map(|c| -c.clone()).collect()
        } else {
            vec![K::zero(); k]
        }
    };

    let mut equations: Vec<Vec<K>> = Vec::new();
    // Cocycle equations on basis triples.
    for a in 0..k {
        for b in (a + 1)..k {
            for c in (b + 1)..k {
                let mut row = vec![K::zero(); vars];
                add_eps_term(&mut row, a, &coords(b, c), 1);
                add_eps_term(&mut row, b, &coords(a, c), -1);
                add_eps_term(&mut row, c, &coords(a, b), 1);
                equations.push(row);
            }
        }
    }
    // Contraction equations: ι_X ε = 0 on E for each basis vector of p.
    for x_row in p.basis_rows() {
        let x = e
            .coordinates_of(&x_row)?
            .expect("p is contained in E, checked above");
        for b in 0..k {
            let mut row = vec![K::zero(); vars];
            for (a, xa) in x.iter().enumerate() {
                if a == b || xa.is_zero() {
                    continue;
                }
                let (v, orient) = if a < b {
                    (var_index[a][b], 1)
                } else {
                    (var_index[b][a], -1)
                };
                row[v] = row[v].clone() + K::from_int(orient) * xa.clone();
            }
            equations.push(row);
        }
    }

    let system = Matrix::from_fn(equations.len(), vars, |r, c| equations[r][c].clone());
    let kernel = system.kernel();
    // Canonical basis of the solution space.
    let canonical = Subspace::span(vars, &kernel)?;
    let mut basis = Vec::new();
    for flat in canonical.basis_rows() {
        let mut eps = Matrix::zeros(k, k);
        for a in 0..k {
            for b in (a + 1)..k {
                eps[(a, b)] = flat[var_index[a][b]].clone();
                eps[(b, a)] = -flat[var_index[a][b]].clone();
            }
        }
        basis.push(eps);
    }
    Ok(basis)
}

/// Lexicographic combinations of `k` indices out of `n`.
struct Combinations {
    n: usize,
    k: usize,
    state: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        let state = if k <= n {
            Some((0..k).collect())
        } else {
            None
        };
        Self { n, k, state }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.state.clone()?;
        // Advance to the next combination.
        let mut next = current.clone();
        let mut i = self.k;
        loop {
            if i == 0 {
                self.state = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - (self.k - i) {
                next[i] += 1;
                for j in (i + 1)..self.k {
                    next[j] = next[j - 1] + 1;
                }
                self.state = Some(next);
                break;
            }
        }
        Some(current)
    }
}

/// Streams candidate subalgebras `E` with `p ⊆ E ⊆ g`, deduplicated by
/// canonical form, in a deterministic order (ascending generating-set
/// size, lexicographic within a size). Completeness holds only in
/// subsets-of-basis mode, relative to that combinatorial family.
pub fn enumerate_e<'a, K: Field>(
    algebra: &'a LieAlgebra<K>,
    p: &'a Subspace<K>,
    generator: &EGenerator<K>,
) -> Result<Box<dyn Iterator<Item = Subspace<K>> + 'a>> {
    algebra.check_dim(p.ambient_dim(), "candidate enumeration")?;
    if let Some((i, j, _)) = algebra.subalgebra_escape(p)? {
        return Err(Error::NotSubalgebra { i, j });
    }
    let n = algebra.dim();

    let span_with_p = move |extra: Vec<Vec<K>>| -> Subspace<K> {
        let mut rows = p.basis_rows();
        rows.extend(extra);
        Subspace::span(n, &rows).expect("rows share the ambient dimension")
    };

    match generator {
        EGenerator::BasisSubsets => {
            let mut seen = HashSet::new();
            let candidates = (0..=n)
                .flat_map(move |size| Combinations::new(n, size))
                .filter_map(move |combo| {
                    let extra: Vec<Vec<K>> = combo
                        .iter()
                        .map(|&i| {
                            let mut v = vec![K::zero(); n];
                            v[i] = K::one();
                            v
                        })
                        .collect();
                    let e = span_with_p(extra);
                    if !seen.insert(e.clone()) {
                        return None;
                    }
                    match algebra.is_subalgebra(&e) {
                        Ok(true) => Some(e),
                        _ => None,
                    }
                });
            Ok(Box::new(candidates))
        }
        EGenerator::IntegerGrid { bound } => {
            assert!(*bound >= 1, "grid bound must be at least 1");
            // Grid vectors deduplicated up to scale by the canonical form
            // of the line they span.
            let scalars = K::grid_values(*bound);
            let mut coords: Vec<Vec<K>> = vec![vec![]];
            for _ in 0..n {
                let mut next = Vec::with_capacity(coords.len() * scalars.len());
                for prefix in &coords {
                    for s in &scalars {
                        let mut v = prefix.clone();
                        v.push(s.clone());
                        next.push(v);
                    }
                }
                coords = next;
            }
            let mut lines = Vec::new();
            let mut seen_lines = HashSet::new();
            for v in coords {
                if v.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let line = Subspace::span(n, &[v])?;
                if seen_lines.insert(line.clone()) {
                    lines.push(line.basis_rows()[0].clone());
                }
            }
            let max_extra = n - p.dim();
            let mut seen = HashSet::new();
            let lines_owned = lines;
            let candidates = (0..=max_extra)
                .flat_map({
                    let len = lines_owned.len();
                    move |size| Combinations::new(len, size)
                })
                .filter_map(move |combo| {
                    let extra: Vec<Vec<K>> =
                        combo.iter().map(|&i| lines_owned[i].clone()).collect();
                    let e = span_with_p(extra);
                    if !seen.insert(e.clone()) {
                        return None;
                    }
                    match algebra.is_subalgebra(&e) {
                        Ok(true) => Some(e),
                        _ => None,
                    }
                });
            Ok(Box::new(candidates))
        }
        EGenerator::UserList(list) => {
            let mut seen = HashSet::new();
            let list = list.clone();
            let candidates = list.into_iter().filter_map(move |e| {
                if e.ambient_dim() != n || !seen.insert(e.clone()) {
                    return None;
                }
                match (p.leq(&e), algebra.is_subalgebra(&e)) {
                    (Ok(true), Ok(true)) => Some(e),
                    _ => None,
                }
            });
            Ok(Box::new(candidates))
        }
    }
}

fn evaluate_member<K: Field>(
    model: &CurvatureModel<K>,
    pair: &IsotropicPair<K>,
    representative: Phase,
    curvature_configured: bool,
) -> FamilyMember<K> {
    let d = pair.build_l();
    let report = model
        .linear_dirac_check(&d)
        .expect("matching dimensions by construction");
    // Soundness: construction must agree with the independent predicates.
    assert!(
        report.dirac.is_yes(),
        "constructed L(E, eps) failed the independent Dirac test: {:?}",
        report.dirac
    );
    assert!(
        report.contains_p,
        "constructed L(E, eps) lost the containment of p"
    );
    let theta_ok = curvature_configured.then(|| report.theta.vanishes());

    let d_cap_g = d.intersect_algebra().expect("even ambient");
    let poisson = &d_cap_g == model.p();

    let gcs = K::imaginary_unit().map(|_| {
        let dbar = d.conjugate();
        let meet = d
            .subspace()
            .intersect(dbar.subspace())
            .expect("same ambient");
        let embedded_p = DoubleSubspace::embed_vectors(model.p());
        &meet == embedded_p.subspace()
    });

    FamilyMember {
        eps: pair.eps().clone(),
        representative,
        dirac: true,
        contains_p: true,
        theta_ok,
        poisson,
        gcs,
    }
}

fn member_passes<K: Field>(cfg: &SearchConfig<K>, member: &FamilyMember<K>) -> bool {
    let theta_fine = member.theta_ok.unwrap_or(true);
    if cfg.require_poisson && !(member.poisson && theta_fine) {
        return false;
    }
    if cfg.require_gcs && !(member.gcs == Some(true) && theta_fine) {
        return false;
    }
    true
}

fn evaluate_family<K: Field>(
    algebra: &LieAlgebra<K>,
    p: &Subspace<K>,
    cfg: &SearchConfig<K>,
    model: &CurvatureModel<K>,
    e: Subspace<K>,
) -> Option<Family<K>> {
    let eps_basis = epsilon_space(algebra, &e, p)
        .expect("enumerated candidates are subalgebras containing p");
    let curvature_configured = cfg.curvature.is_some();

    let base_forms: Vec<Matrix<K>> = if eps_basis.is_empty() {
        vec![Matrix::zeros(e.dim(), e.dim())]
    } else {
        eps_basis.clone()
    };

    let mut members = Vec::new();
    for eps in base_forms {
        let pair = IsotropicPair::new(e.clone(), eps).expect("solver output is antisymmetric");
        let mut member = evaluate_member(model, &pair, Phase::Canonical, curvature_configured);
        // The intersection with the conjugate is not invariant under
        // scaling by i, so a gcs request probes that representative too.
        if cfg.require_gcs && member.gcs == Some(false) {
            if let Some(i) = K::imaginary_unit() {
                if !pair.eps().is_zero() {
                    let rotated = pair.scale_form(&i);
                    let candidate =
                        evaluate_member(model, &rotated, Phase::TimesI, curvature_configured);
                    if candidate.gcs == Some(true) {
                        member = candidate;
                    }
                }
            }
        }
        if member_passes(cfg, &member) {
            members.push(member);
        }
    }

    if members.is_empty() {
        None
    } else {
        Some(Family {
            e,
            eps_basis,
            members,
        })
    }
}

/// Runs the full classification. Candidate evaluation is pure and runs on
/// the current rayon pool in fixed-size batches; results are merged in
/// candidate order, so the output is byte-identical across thread counts.
pub fn classify<K: Field>(
    algebra: &LieAlgebra<K>,
    p: &Subspace<K>,
    cfg: &SearchConfig<K>,
) -> Result<ClassificationResult<K>> {
    assert!(cfg.max_results >= 1, "max_results must be at least 1");
    let model = match &cfg.curvature {
        Some(m) => {
            if m.algebra() != algebra || m.p() != p {
                return Err(Error::PMismatch);
            }
            m.clone()
        }
        None => CurvatureModel::flat(algebra.clone(), p.clone())?,
    };

    let mut candidates = enumerate_e(algebra, p, &cfg.e_generator)?;
    let mut families = Vec::new();
    let mut summary = Summary::default();

    const BATCH: usize = 16;
    'outer: loop {
        let batch: Vec<Subspace<K>> = candidates.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            break;
        }
        summary.candidates_examined += batch.len();
        let evaluated: Vec<Option<Family<K>>> = batch
            .into_par_iter()
            .map(|e| evaluate_family(algebra, p, cfg, &model, e))
            .collect();
        for family in evaluated.into_iter().flatten() {
            families.push(family);
            if families.len() == cfg.max_results {
                break 'outer;
            }
        }
    }

    summary.families = families.len();
    for family in &families {
        summary.members += family.members.len();
        for member in &family.members {
            if member.poisson {
                summary.poisson_members += 1;
            }
            if member.gcs == Some(true) {
                summary.gcs_members += 1;
            }
        }
    }

    Ok(ClassificationResult {
        generator: cfg.e_generator.tag(),
        families,
        summary,
    })
}
