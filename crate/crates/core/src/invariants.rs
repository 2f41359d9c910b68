//! Lyubeznik tables, Bass and dual Bass numbers, supports and injective
//! dimensions of `H^r_I(R)`, plus the consistency checks that compare the two
//! routes to them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::cohomology::reduced_homology_dim;
use crate::complex::VectorSpaceComplex;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::hypercube::{Hypercube, HypercubeSource};
use crate::ideal::{minimal_elements, MonomialIdeal};
use crate::mask::DegreeMask;
use crate::matrix::Matrix;
use crate::resolution::{
    linearity_defect_of, minimal_resolution, minimize_with, taylor_complex, BettiTable,
    GradedFreeComplex, StrandFrame, Sweep,
};
use crate::simplicial::SimplicialComplex;

/// Runs `$body` with `$f` bound to a reference to the field named by `$spec`.
#[macro_export]
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            $crate::field::FieldSpec::Rationals => {
                let $f = &$crate::field::Rationals;
                $body
            }
            $crate::field::FieldSpec::Prime(p) => {
                let $f = &$crate::field::PrimeField::new(p)?;
                $body
            }
        }
    };
}

/// `λ_{p,i}(R/I)` for `0 ≤ p ≤ i ≤ d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LyubeznikTable {
    pub d: usize,
    pub field: FieldSpec,
    entries: Vec<Vec<usize>>,
}

impl LyubeznikTable {
    /// Builds the table from `λ(p, i)` for all `0 ≤ p, i ≤ n`, checking that
    /// nothing is nonzero outside `p ≤ i ≤ d` and that `λ_{d,d} ≥ 1`.
    pub fn from_fn(n: usize, d: usize, field: FieldSpec, lambda: impl Fn(usize, usize) -> usize) -> Result<Self> {
        for i in 0..=n {
            for p in 0..=n {
                let v = lambda(p, i);
                if v != 0 && (p > i || i > d) {
                    return Err(Error::Contract(format!(
                        "Lyubeznik number λ_{{{p},{i}}} = {v} lies outside the table"
                    )));
                }
            }
        }
        let entries: Vec<Vec<usize>> = (0..=d).map(|p| (0..=d).map(|i| lambda(p, i)).collect()).collect();
        if entries[d][d] == 0 {
            return Err(Error::Contract(format!("λ_{{{d},{d}}} vanishes")));
        }
        Ok(LyubeznikTable { d, field, entries })
    }

    pub fn get(&self, p: usize, i: usize) -> usize {
        self.entries.get(p).and_then(|row| row.get(i)).copied().unwrap_or(0)
    }

    /// Rows `p = 0..=d`, each listing `λ_{p,0..=d}`.
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.entries
    }

    /// A single `1` at `(d, d)` and zeros elsewhere.
    pub fn is_trivial(&self) -> bool {
        (0..=self.d).all(|p| (0..=self.d).all(|i| self.get(p, i) == if (p, i) == (self.d, self.d) { 1 } else { 0 }))
    }
}

impl fmt::Display for LyubeznikTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.entries.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
        for p in 0..=self.d {
            let cells: Vec<String> = (0..=self.d)
                .map(|i| {
                    if i < p {
                        format!("{:>width$}", "")
                    } else {
                        format!("{:>width$}", self.get(p, i))
                    }
                })
                .collect();
            writeln!(f, "{}", cells.join(" ").trim_end())?;
        }
        Ok(())
    }
}

/// `μ_p(p_α, H^r_I(R))`, one row per mask with a nonzero entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BassTable {
    pub r: usize,
    pub rows: BTreeMap<DegreeMask, Vec<usize>>,
}

/// `π_p(p_α, H^r_I(R))`, one row per mask with a nonzero entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBassTable {
    pub r: usize,
    pub rows: BTreeMap<DegreeMask, Vec<usize>>,
}

fn row_value(rows: &BTreeMap<DegreeMask, Vec<usize>>, alpha: DegreeMask, p: usize) -> usize {
    rows.get(&alpha).and_then(|v| v.get(p)).copied().unwrap_or(0)
}

impl BassTable {
    pub fn get(&self, alpha: DegreeMask, p: usize) -> usize {
        row_value(&self.rows, alpha, p)
    }
}

impl DualBassTable {
    pub fn get(&self, alpha: DegreeMask, p: usize) -> usize {
        row_value(&self.rows, alpha, p)
    }
}

/// Small support (masks with a nonzero Bass number) and support (masks whose
/// localized hypercube is nonzero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Supports {
    pub small: Vec<DegreeMask>,
    pub full: Vec<DegreeMask>,
}

/// Injective dimension bounds of one module. Every field is `None` for the
/// zero module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InjectiveDimensions {
    pub star_id: Option<usize>,
    pub id_ungraded: Option<usize>,
    pub dim_small_supp: Option<usize>,
    pub dim_module: Option<usize>,
}

/// Outcome of the bound `μ_t(m) = 0` for `t > s + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthBound {
    /// Largest Bass index over the height `n − 1` face primes in the support;
    /// `None` when there are none.
    pub s: Option<usize>,
    pub mu_at_maximal: Vec<usize>,
    pub holds: bool,
}

/// One named consistency check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Everything about the local cohomology modules `H^r_I(R)` of one ideal over
/// one field, computed lazily and cached.
pub struct LocalCohomology<F: Field> {
    source: HypercubeSource<F>,
    resolution: OnceLock<Result<GradedFreeComplex<F>>>,
    bass: Vec<OnceLock<Result<BassTable>>>,
}

impl<F: Field> LocalCohomology<F> {
    pub fn new(ideal: &MonomialIdeal, field: &F) -> Result<Self> {
        let source = HypercubeSource::new(ideal, field)?;
        Ok(LocalCohomology {
            source,
            resolution: OnceLock::new(),
            bass: (0..=ideal.n()).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        self.source.ideal()
    }

    pub fn field(&self) -> &F {
        self.source.field()
    }

    pub fn n(&self) -> usize {
        self.ideal().n()
    }

    /// `dim R/I`.
    pub fn d(&self) -> usize {
        self.ideal().dim_quotient().expect("ideal is proper and nonzero")
    }

    pub fn hypercube(&self, r: usize) -> Result<&Hypercube<F>> {
        self.source.hypercube(r)
    }

    /// Degrees `r` with `H^r_I(R) ≠ 0`.
    pub fn nonzero_degrees(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for r in 0..=self.n() {
            if !self.hypercube(r)?.is_zero() {
                out.push(r);
            }
        }
        Ok(out)
    }

    /// The minimal free resolution of `I^∨`.
    pub fn dual_resolution(&self) -> Result<&GradedFreeComplex<F>> {
        self.resolution
            .get_or_init(|| {
                let dual = self.ideal().alexander_dual()?;
                minimal_resolution(&dual, self.field())
            })
            .as_ref()
            .map_err(|e| e.clone())
    }

    pub fn dual_betti(&self) -> Result<BettiTable> {
        Ok(BettiTable::from_resolution(self.dual_resolution()?))
    }

    pub fn strand_frame(&self, r: usize) -> Result<StrandFrame<F>> {
        Ok(StrandFrame::from_resolution(self.dual_resolution()?, self.n(), r))
    }

    /// `λ_{p,n−r} = dim H_p(M•)` for the hypercube of `H^r_I(R)`.
    pub fn lyubeznik_table(&self) -> Result<LyubeznikTable> {
        let n = self.n();
        let mut raw = vec![vec![0; n + 1]; n + 1];
        for r in 0..=n {
            let h = self.hypercube(r)?.main_complex()?.homology_dims();
            for (p, v) in h.into_iter().enumerate() {
                raw[p][n - r] = v;
            }
        }
        LyubeznikTable::from_fn(n, self.d(), self.field().spec(), |p, i| raw[p][i])
    }

    /// `λ_{p,n−r} = dim H_p` of the transposed `r`-linear strand frame of the
    /// minimal resolution of `I^∨`.
    pub fn lyubeznik_via_strands(&self) -> Result<LyubeznikTable> {
        let n = self.n();
        let mut raw = vec![vec![0; n + 1]; n + 1];
        for r in 0..=n {
            let h = self.strand_frame(r)?.transposed().homology_dims();
            for (p, v) in h.into_iter().enumerate() {
                raw[p][n - r] = v;
            }
        }
        LyubeznikTable::from_fn(n, self.d(), self.field().spec(), |p, i| raw[p][i])
    }

    /// Masks `α` whose localized hypercube `{M_β}_{β ≤ α}` is nonzero.
    pub fn support(&self, r: usize) -> Result<Vec<DegreeMask>> {
        let cube = self.hypercube(r)?;
        let pieces = cube.support();
        Ok(DegreeMask::all(self.n())
            .into_iter()
            .filter(|a| pieces.iter().any(|b| b.is_subset_of(*a)))
            .collect())
    }

    /// `μ_p(p_α) = dim H_p(M•_{α,α})` for every `α` in the support.
    pub fn bass_table(&self, r: usize) -> Result<&BassTable> {
        if r > self.n() {
            return Err(Error::Input(format!("degree r = {r} exceeds n = {}", self.n())));
        }
        self.bass[r]
            .get_or_init(|| {
                let cube = self.hypercube(r)?;
                let mut rows = BTreeMap::new();
                for alpha in self.support(r)? {
                    let mu = cube.restricted_complex(alpha, alpha)?.homology_dims();
                    if mu.iter().any(|&v| v > 0) {
                        rows.insert(alpha, mu);
                    }
                }
                Ok(BassTable { r, rows })
            })
            .as_ref()
            .map_err(|e| e.clone())
    }

    /// `π_p(p_α) = μ_p(p_{1−α})` of the dual hypercube.
    pub fn dual_bass_table(&self, r: usize) -> Result<DualBassTable> {
        let dual = self.hypercube(r)?.dual();
        let one = DegreeMask::ones(self.n());
        let mut rows = BTreeMap::new();
        for alpha in DegreeMask::all(self.n()) {
            let co = one.minus(alpha);
            let pi = dual.restricted_complex(co, co)?.homology_dims();
            if pi.iter().any(|&v| v > 0) {
                rows.insert(alpha, pi);
            }
        }
        Ok(DualBassTable { r, rows })
    }

    /// Dual Bass numbers straight from the original cube: position `p` holds
    /// `⊕_{γ ≤ 1−α, |γ| = p} M_{α+γ}` with transposed edge maps.
    pub fn dual_bass_direct(&self, r: usize) -> Result<DualBassTable> {
        let cube = self.hypercube(r)?;
        let one = DegreeMask::ones(self.n());
        let mut rows = BTreeMap::new();
        for alpha in DegreeMask::all(self.n()) {
            let pi = dual_bass_complex(cube, alpha.intersection(one))?.homology_dims();
            if pi.iter().any(|&v| v > 0) {
                rows.insert(alpha, pi);
            }
        }
        Ok(DualBassTable { r, rows })
    }

    pub fn small_support(&self, r: usize) -> Result<Supports> {
        let small = self.bass_table(r)?.rows.keys().copied().collect();
        Ok(Supports {
            small,
            full: self.support(r)?,
        })
    }

    pub fn injective_dimensions(&self, r: usize) -> Result<InjectiveDimensions> {
        let n = self.n();
        let bass = self.bass_table(r)?;
        let mut star_id = None;
        let mut id_ungraded = None;
        for (alpha, mu) in &bass.rows {
            for (p, &v) in mu.iter().enumerate() {
                if v > 0 {
                    star_id = star_id.max(Some(p));
                    id_ungraded = id_ungraded.max(Some(p + n - alpha.weight()));
                }
            }
        }
        let dim_small_supp = bass.rows.keys().map(|a| n - a.weight()).max();
        let dim_module = self.support(r)?.iter().map(|a| n - a.weight()).max();
        if star_id > dim_small_supp {
            return Err(Error::Contract(format!(
                "injective dimension {star_id:?} exceeds the small support dimension {dim_small_supp:?}"
            )));
        }
        Ok(InjectiveDimensions {
            star_id,
            id_ungraded,
            dim_small_supp,
            dim_module,
        })
    }

    /// Whether the Lyubeznik table is trivial, which for `R/I` is equivalent to
    /// being sequentially Cohen–Macaulay over this field.
    pub fn sequentially_cm(&self) -> Result<bool> {
        Ok(self.lyubeznik_table()?.is_trivial())
    }

    pub fn growth_bound_check(&self, r: usize) -> Result<GrowthBound> {
        let n = self.n();
        let bass = self.bass_table(r)?;
        let s = self
            .support(r)?
            .into_iter()
            .filter(|a| a.weight() + 1 == n)
            .filter_map(|a| bass.rows.get(&a).and_then(|mu| mu.iter().rposition(|&v| v > 0)))
            .max();
        let mu_at_maximal = bass.rows.get(&DegreeMask::ones(n)).cloned().unwrap_or_default();
        let limit = s.map_or(0, |s| s + 1);
        let holds = mu_at_maximal.iter().enumerate().all(|(t, &v)| t <= limit || v == 0);
        Ok(GrowthBound {
            s,
            mu_at_maximal,
            holds,
        })
    }

    /// Non-minimal masks of the support with `μ_0 ≠ 0`.
    pub fn mu0_summand_report(&self, r: usize) -> Result<Vec<(DegreeMask, usize)>> {
        let support = self.support(r)?;
        let minimal = minimal_elements(&support);
        Ok(self
            .bass_table(r)?
            .rows
            .iter()
            .filter(|(a, mu)| mu[0] > 0 && !minimal.contains(a))
            .map(|(a, mu)| (*a, mu[0]))
            .collect())
    }

    pub fn linearity_defect(&self) -> Result<usize> {
        Ok(linearity_defect_of(self.dual_resolution()?, self.n()))
    }

    /// Runs every cross-validation suite.
    pub fn run_checks(&self) -> Result<Vec<CheckOutcome>> {
        let mut out = Vec::new();
        let routes = (self.lyubeznik_table()?, self.lyubeznik_via_strands()?);
        out.push(CheckOutcome {
            name: "routes agree",
            passed: routes.0 == routes.1,
            detail: if routes.0 == routes.1 {
                "hypercube and strand tables are equal".into()
            } else {
                format!("hypercube:\n{}strands:\n{}", routes.0, routes.1)
            },
        });
        let tm = terai_mustata_mismatches(self)?;
        out.push(CheckOutcome {
            name: "Terai/Mustata",
            passed: tm.is_empty(),
            detail: summarize(&tm, "link homology and dual restriction cohomology agree"),
        });
        let bh = betti_hypercube_mismatches(self)?;
        out.push(CheckOutcome {
            name: "Betti/hypercube",
            passed: bh.is_empty(),
            detail: summarize(&bh, "Betti numbers of the dual equal hypercube vertex dimensions"),
        });
        let mut comm = Vec::new();
        for r in 0..=self.n() {
            if let Err(e) = self.hypercube(r)?.verify_commutativity() {
                comm.push(format!("r={r}: {e}"));
            }
        }
        out.push(CheckOutcome {
            name: "commutativity",
            passed: comm.is_empty(),
            detail: summarize(&comm, "every hypercube square commutes"),
        });
        let mut matlis = Vec::new();
        for r in self.nonzero_degrees()? {
            if self.dual_bass_table(r)? != self.dual_bass_direct(r)? {
                matlis.push(format!("r={r}"));
            }
        }
        out.push(CheckOutcome {
            name: "Matlis duality",
            passed: matlis.is_empty(),
            detail: summarize(&matlis, "dual Bass numbers agree when computed two ways"),
        });
        let mut growth = Vec::new();
        for r in self.nonzero_degrees()? {
            if !self.growth_bound_check(r)?.holds {
                growth.push(format!("r={r}"));
            }
        }
        out.push(CheckOutcome {
            name: "growth bound",
            passed: growth.is_empty(),
            detail: summarize(&growth, "Bass numbers at the maximal ideal respect the bound"),
        });
        Ok(out)
    }
}

fn summarize(failures: &[String], ok: &str) -> String {
    if failures.is_empty() {
        ok.to_string()
    } else {
        failures.join("; ")
    }
}

/// Complex computing `π_•(p_α)` from the original cube.
fn dual_bass_complex<F: Field>(cube: &Hypercube<F>, alpha: DegreeMask) -> Result<VectorSpaceComplex<F>> {
    let f = cube.field();
    let co = cube.ambient().minus(alpha);
    let w = co.weight();
    let mut levels: Vec<Vec<DegreeMask>> = vec![Vec::new(); w + 1];
    for g in co.submasks() {
        levels[g.weight()].push(g);
    }
    let offsets = |level: &[DegreeMask]| -> (BTreeMap<DegreeMask, usize>, usize) {
        let mut map = BTreeMap::new();
        let mut total = 0;
        for g in level {
            map.insert(*g, total);
            total += cube.vertex_dim(alpha.union(*g));
        }
        (map, total)
    };
    let layouts: Vec<(BTreeMap<DegreeMask, usize>, usize)> = levels.iter().map(|l| offsets(l)).collect();
    let mut maps = Vec::with_capacity(w);
    for p in 0..w {
        let mut mat = Matrix::zeros(f, layouts[p].1, layouts[p + 1].1);
        for &g in &levels[p + 1] {
            let source = alpha.union(g);
            if cube.vertex_dim(source) == 0 {
                continue;
            }
            for i in g.indices() {
                let target = source.without(i);
                if cube.vertex_dim(target) == 0 {
                    continue;
                }
                let block = cube.edge(target, i).transpose();
                let sign = co.minus(g).sign(i);
                let block = if sign == 1 { block } else { block.scale(&f.from_i64(-1)) };
                mat.set_block(layouts[p].0[&g.without(i)], layouts[p + 1].0[&g], &block);
            }
        }
        maps.push(mat);
    }
    VectorSpaceComplex::new(f, layouts.iter().map(|l| l.1).collect(), maps)
}

/// `(r, α)` where `dim H̃_{n−r−|α|−1}(link_α Δ)` differs from
/// `dim H̃^{r−2}(Δ^∨|_{1−α})`, or where `(link_α Δ)^∨` differs from
/// `Δ^∨|_{1−α}` as complexes.
pub fn terai_mustata_mismatches<F: Field>(lc: &LocalCohomology<F>) -> Result<Vec<String>> {
    let n = lc.n();
    let delta = SimplicialComplex::stanley_reisner(lc.ideal());
    let dual = lc.source_dual_complex();
    let one = DegreeMask::ones(n);
    let mut out = Vec::new();
    for alpha in DegreeMask::all(n) {
        let link = delta.link(alpha);
        let co = one.minus(alpha);
        if link.alexander_dual() != dual.restriction(co) {
            out.push(format!("complexes differ at {alpha:?}"));
        }
        for r in 0..=n {
            let q = n as isize - r as isize - alpha.weight() as isize - 1;
            let terai = reduced_homology_dim(&link, q, lc.field());
            let mustata = lc.hypercube(r)?.vertex_dim(co);
            if terai != mustata {
                out.push(format!("r={r}, α={alpha:?}: {terai} vs {mustata}"));
            }
        }
    }
    Ok(out)
}

/// `(j, α)` where `β_{j,α}(I^∨)` differs from the vertex dimension of
/// `M_α` in the hypercube of `H^{|α|−j}_I(R)`.
pub fn betti_hypercube_mismatches<F: Field>(lc: &LocalCohomology<F>) -> Result<Vec<String>> {
    let betti = lc.dual_betti()?;
    let n = lc.n();
    let mut out = Vec::new();
    for alpha in DegreeMask::all(n) {
        for r in 0..=n.min(alpha.weight()) {
            let j = alpha.weight() - r;
            let (b, m) = (betti.get(j, alpha), lc.hypercube(r)?.vertex_dim(alpha));
            if b != m {
                out.push(format!("j={j}, α={alpha:?}: β={b}, dim M={m}"));
            }
        }
    }
    let listed: usize = betti.entries.values().sum();
    let cube_total: usize = (0..=n).map(|r| lc.hypercube(r).map(|h| h.total_dim())).sum::<Result<usize>>()?;
    if listed != cube_total {
        out.push(format!("total Betti number {listed} vs total hypercube dimension {cube_total}"));
    }
    Ok(out)
}

/// Whether forward and reverse cancellation orders give the same Betti table
/// for the resolution of `I^∨`.
pub fn minimize_order_independent<F: Field>(ideal: &MonomialIdeal, field: &F) -> Result<bool> {
    let taylor = taylor_complex(&ideal.alexander_dual()?, field)?;
    let forward = minimize_with(&taylor, Sweep::Forward);
    let reverse = minimize_with(&taylor, Sweep::Reverse);
    forward.verify()?;
    reverse.verify()?;
    Ok(BettiTable::from_resolution(&forward) == BettiTable::from_resolution(&reverse))
}

impl<F: Field> LocalCohomology<F> {
    fn source_dual_complex(&self) -> &SimplicialComplex {
        self.source.dual_complex()
    }
}

pub fn lyubeznik_table(ideal: &MonomialIdeal, field: FieldSpec) -> Result<LyubeznikTable> {
    with_field!(field, |f| LocalCohomology::new(ideal, f)?.lyubeznik_table())
}

pub fn lyubeznik_via_strands(ideal: &MonomialIdeal, field: FieldSpec) -> Result<LyubeznikTable> {
    with_field!(field, |f| LocalCohomology::new(ideal, f)?.lyubeznik_via_strands())
}

pub fn bass_table(ideal: &MonomialIdeal, r: usize, field: FieldSpec) -> Result<BassTable> {
    with_field!(field, |f| LocalCohomology::new(ideal, f)?.bass_table(r).cloned())
}

pub fn dual_bass_table(ideal: &MonomialIdeal, r: usize, field: FieldSpec) -> Result<DualBassTable> {
    with_field!(field, |f| LocalCohomology::new(ideal, f)?.dual_bass_table(r))
}

pub fn small_support(ideal: &MonomialIdeal, r: usize, field: FieldSpec) -> Result<Supports> {
    with_field!(field, |f| LocalCohomology::new(ideal, f)?.small_support(r))
}

pub fn injective_dimensions(ideal: &MonomialIdeal, r: usize, field: FieldSpec) -> Result<InjectiveDimensions> {
    with_field!(field, |f| LocalCohomology::new(ideal, f)?.injective_dimensions(r))
}

pub fn sequentially_cm(ideal: &MonomialIdeal, field: FieldSpec) -> Result<bool> {
    with_field!(field, |f| LocalCohomology::new(ideal, f)?.sequentially_cm())
}

pub fn growth_bound_check(ideal: &MonomialIdeal, r: usize, field: FieldSpec) -> Result<GrowthBound> {
    with_field!(field, |f| LocalCohomology::new(ideal, f)?.growth_bound_check(r))
}

pub fn mu0_summand_report(ideal: &MonomialIdeal, r: usize, field: FieldSpec) -> Result<Vec<(DegreeMask, usize)>> {
    with_field!(field, |f| LocalCohomology::new(ideal, f)?.mu0_summand_report(r))
}
