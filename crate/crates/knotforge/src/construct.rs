//! Diagrams realizing prescribed Conway polynomials.
//!
//! Every constructor evaluates its output with the skein evaluator before
//! returning it, so a returned [`RealizedLink`] always carries a diagram
//! whose polynomial is exactly the requested one.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::alexander::bareiss;
use crate::diagram::{
    clasping, conway_skein, twist_classes, Diagram, DiagramError, LinkingGraph, V0,
};
use crate::poly::{Laurent, PolyError};
use crate::seifert_graph::{template, Edge, SeifertGraph};
use crate::tangle::{pretzel_diagram, TangleError};
use crate::{ConwayPoly, IntLaurent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("`{nabla}` is not admissible for {n} component(s)")]
    Inadmissible { nabla: String, n: usize },
    #[error("empty coefficient sequence")]
    EmptySequence,
    #[error("Seifert matrix must be square of even size, got {rows}x{cols}")]
    Shape { rows: usize, cols: usize },
    #[error("the zero polynomial is not realized")]
    ZeroPolynomial,
    #[error("at least three components are needed, got {0}")]
    Components(usize),
    #[error("`{0}` is not monic")]
    NotMonic(String),
    #[error("no prime {n}-component link has Conway polynomial {nabla}")]
    ImpossibleRealization { nabla: String, n: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("diagram does not evaluate to `{0}`")]
    Mismatch(String),
    #[error("certificate failed: {0}")]
    Certificate(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Tangle(#[from] TangleError),
}

/// Square integer matrix of even size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertMatrix {
    entries: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<SeifertMatrix, ConstructError> {
        let rows = entries.len();
        if let Some(bad) = entries.iter().find(|r| r.len() != rows) {
            return Err(ConstructError::Shape {
                rows,
                cols: bad.len(),
            });
        }
        if rows % 2 == 1 {
            return Err(ConstructError::Shape { rows, cols: rows });
        }
        Ok(SeifertMatrix { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    /// `det(V - V^T)`.
    pub fn intersection_det(&self) -> i64 {
        let n = self.size();
        let m = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Laurent::constant((self.get(i, j) - self.get(j, i)) as i128))
                    .collect()
            })
            .collect();
        bareiss(m).coeff(0) as i64
    }
}

/// Block-tridiagonal matrix with diagonal blocks `[[-1,-1],[0,a_1]]`,
/// `[[0,-1],[0,a_i]]` and unit couplings between consecutive blocks.
pub fn seifert_matrix_v(a: &[i64]) -> Result<SeifertMatrix, ConstructError> {
    if a.is_empty() {
        return Err(ConstructError::EmptySequence);
    }
    let n = 2 * a.len();
    let mut v = vec![vec![0i64; n]; n];
    for (i, &ai) in a.iter().enumerate() {
        let (p, q) = (2 * i, 2 * i + 1);
        v[p][p] = if i == 0 { -1 } else { 0 };
        v[p][q] = -1;
        v[q][q] = ai;
        if q + 1 < n {
            v[q][q + 1] = 1;
            v[q + 1][q] = 1;
        }
    }
    SeifertMatrix::new(v)
}

/// `t^-d det(V - t V^T)` for a `2d x 2d` matrix, returned in `u = t^(1/2)`.
pub fn alexander_from_seifert(v: &SeifertMatrix) -> IntLaurent {
    let n = v.size();
    let m = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    Laurent::from_terms([(0, v.get(i, j) as i128), (2, -(v.get(j, i) as i128))])
                })
                .collect()
        })
        .collect();
    let det = bareiss(m).shift(-(n as i64));
    IntLaurent::from_terms(
        det.terms()
            .map(|(e, c)| (e, i64::try_from(c).expect("determinant fits in i64"))),
    )
}

mod pd_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Diagram;

    pub fn serialize<S: Serializer>(d: &Diagram, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&d.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Diagram, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A constructed diagram together with the data certifying it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealizedLink {
    pub nabla: ConwayPoly,
    #[serde(rename = "pd", with = "pd_text")]
    pub diagram: Diagram,
    pub matrix: Option<SeifertMatrix>,
    /// Crossing of the clasp whose change unknots a realized knot.
    pub unknotting_site: Option<usize>,
    /// Crossing indices of the marked twist regions.
    pub clasp_sites: Vec<Vec<usize>>,
    /// Two crossings forming a parallel clasp, for tangle surgery.
    pub surgery_site: Option<[usize; 2]>,
    pub n: usize,
    /// Genus `d` for knots, the top `z`-degree for links.
    pub d: u32,
    pub genus: i64,
    pub t_strong: usize,
    pub t_strong_reverse: usize,
    pub volume_bound: Option<f64>,
    pub fibered_necessary: bool,
    /// Lower bound on the smooth Euler characteristic, when one is known.
    pub slice_bound: Option<i64>,
    pub linking_graph: Option<LinkingGraph>,
}

impl RealizedLink {
    fn assemble(
        nabla: &ConwayPoly,
        diagram: Diagram,
        clasp_sites: Vec<Vec<usize>>,
        volume_bound: Option<f64>,
    ) -> Result<RealizedLink, ConstructError> {
        let got = conway_skein(&diagram)?;
        if got != *nabla {
            return Err(ConstructError::Certificate(format!(
                "diagram evaluates to `{got}`, expected `{nabla}`"
            )));
        }
        let sd = diagram.seifert_data();
        let tw = twist_classes(&diagram);
        let n = diagram.component_count();
        Ok(RealizedLink {
            nabla: nabla.clone(),
            matrix: None,
            unknotting_site: None,
            surgery_site: None,
            clasp_sites,
            n,
            d: nabla.maxdeg().unwrap_or(0),
            genus: sd.genus,
            t_strong: tw.t_strong,
            t_strong_reverse: tw.t_strong_reverse,
            volume_bound,
            fibered_necessary: fibered_test(nabla, sd.chi),
            slice_bound: None,
            linking_graph: if n >= 2 {
                Some(diagram.linking_graph()?)
            } else {
                None
            },
            diagram,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

fn fibered_test(nabla: &ConwayPoly, chi: i64) -> bool {
    nabla.is_monic().unwrap_or(false) && nabla.maxdeg().map(|m| m as i64) == Some(1 - chi)
}

/// Necessary condition for the canonical surface of `d` to be a fiber.
pub fn fibered_necessary(d: &Diagram, nabla: &ConwayPoly) -> Result<bool, ConstructError> {
    if conway_skein(d)? != *nabla {
        return Err(ConstructError::Mismatch(nabla.to_string()));
    }
    Ok(fibered_test(nabla, d.seifert_data().chi))
}

fn inadmissible(nabla: &ConwayPoly, n: usize) -> ConstructError {
    ConstructError::Inadmissible {
        nabla: nabla.to_string(),
        n,
    }
}

fn certify(ok: bool, what: impl FnOnce() -> String) -> Result<(), ConstructError> {
    if ok {
        Ok(())
    } else {
        Err(ConstructError::Certificate(what()))
    }
}

/// Knot with the given polynomial, canonical genus `d` and an unknotting
/// crossing, compiled from the edge-labelled Seifert graph family.
pub fn realize_knot(nabla: &ConwayPoly) -> Result<RealizedLink, ConstructError> {
    if !nabla.is_admissible(1) {
        return Err(inadmissible(nabla, 1));
    }
    let a = nabla.coeff_vector()?;
    let d = a.len();
    if d == 0 {
        return RealizedLink::assemble(nabla, Diagram::unknot(), Vec::new(), None);
    }
    let t = template(&a);
    let c = t.graph.compile()?;
    let sites: Vec<Vec<usize>> = t
        .bands
        .iter()
        .chain([&t.last])
        .map(|&e| c.edge_crossings[e].clone())
        .collect();
    let trefoil = ConwayPoly::from_coeff_vector(&[-1]);
    let bound = (*nabla != trefoil).then(|| 10.0 * V0 * (4 * d - 3) as f64);
    let mut r = RealizedLink::assemble(nabla, c.diagram, sites, bound)?;
    certify(r.genus == d as i64, || {
        format!("canonical genus {} instead of {d}", r.genus)
    })?;
    certify(r.t_strong_reverse == 4 * d - 1, || {
        format!(
            "{} reverse twists instead of {}",
            r.t_strong_reverse,
            4 * d - 1
        )
    })?;
    r.d = d as u32;
    r.unknotting_site = Some(c.edge_crossings[t.top][0]);
    r.surgery_site = Some([c.edge_crossings[t.top][0], c.edge_crossings[t.mid][0]]);
    r.matrix = Some(seifert_matrix_v(&a)?);
    Ok(r)
}

/// Smooth the unknotting crossing of the template knot for `a`; returns the
/// diagram and the twist regions (bands, then the last edge).
fn smoothed_template(a: &[i64]) -> Result<(Diagram, Vec<Vec<usize>>), ConstructError> {
    let t = template(a);
    let c = t.graph.compile()?;
    let top = c.edge_crossings[t.top][0];
    let shift = |k: usize| if k > top { k - 1 } else { k };
    let sites = t
        .bands
        .iter()
        .chain([&t.last])
        .map(|&e| c.edge_crossings[e].iter().map(|&k| shift(k)).collect())
        .collect();
    Ok((c.diagram.smooth(top)?, sites))
}

fn link2_core(nabla_l: &ConwayPoly) -> Result<RealizedLink, ConstructError> {
    let knot = &ConwayPoly::one() - &nabla_l.shift_up(1);
    let (diagram, sites) = smoothed_template(&knot.coeff_vector()?)?;
    let d = nabla_l.maxdeg().unwrap_or(0);
    let bound = Some(20.0 * V0 * (d as f64 - 1.0));
    RealizedLink::assemble(nabla_l, diagram, sites, bound)
}

/// Two-component link obtained by smoothing the unknotting crossing of a
/// realized knot. With `mirror_trick` and linking number in `1..=3`, the
/// mirror image of a realization of `-nabla_l` is returned instead.
pub fn realize_link2(
    nabla_l: &ConwayPoly,
    mirror_trick: bool,
) -> Result<RealizedLink, ConstructError> {
    if nabla_l.is_zero() {
        return Err(ConstructError::ZeroPolynomial);
    }
    if !nabla_l.is_admissible(2) {
        return Err(inadmissible(nabla_l, 2));
    }
    if mirror_trick && (1..=3).contains(&nabla_l.coeff(1)) {
        let r = link2_core(&-nabla_l)?;
        return RealizedLink::assemble(nabla_l, r.diagram.mirror(), r.clasp_sites, r.volume_bound);
    }
    link2_core(nabla_l)
}

fn sign_pow(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `n`-component link with the given polynomial.
///
/// Positive genus goes through a two-component link followed by `n - 2`
/// claspings in one twist region; genus zero uses pretzel links and a
/// three-circle special diagram.
pub fn realize_link_n(
    nabla: &ConwayPoly,
    n: usize,
    monic_mode: bool,
) -> Result<RealizedLink, ConstructError> {
    if n < 3 {
        return Err(ConstructError::Components(n));
    }
    if nabla.is_zero() {
        return Err(ConstructError::ZeroPolynomial);
    }
    if !nabla.is_admissible(n) {
        return Err(inadmissible(nabla, n));
    }
    if monic_mode && !nabla.is_monic()? {
        return Err(ConstructError::NotMonic(nabla.to_string()));
    }
    let r = if nabla.maxdeg() == Some(n as u32 - 1) {
        genus_zero(nabla, n)?
    } else {
        by_claspings(nabla, n)?
    };
    certify(r.n == n, || format!("{} components instead of {n}", r.n))?;
    if monic_mode {
        certify(r.fibered_necessary, || {
            "canonical surface cannot be a fiber".into()
        })?;
    }
    Ok(r)
}

fn genus_zero(nabla: &ConwayPoly, n: usize) -> Result<RealizedLink, ConstructError> {
    let c = nabla.coeff(n as u32 - 1);
    if n == 3 && c == 1 {
        return Err(ConstructError::ImpossibleRealization {
            nabla: nabla.to_string(),
            n,
        });
    }
    if c.abs() != 1 {
        return Err(ConstructError::Unsupported(format!(
            "genus-0 realization of `{nabla}`"
        )));
    }
    let alternating = |len: usize| -> Vec<i64> { (0..len).map(|i| 2 * sign_pow(i)).collect() };
    let (diagram, special) = if n.is_multiple_of(2) {
        let mut p = alternating(n - 1);
        p.push(-4);
        let d = pretzel_diagram(&p)?;
        (if c == sign_pow(n / 2) { d } else { d.mirror() }, false)
    } else if c == sign_pow(n / 2) {
        (pretzel_diagram(&alternating(n))?, false)
    } else {
        (three_circle(n).compile()?.diagram, true)
    };
    let bound = (n != 3).then_some(10.0 * V0 * n as f64);
    let r = RealizedLink::assemble(nabla, diagram, Vec::new(), bound)?;
    certify(r.genus == 0, || format!("canonical genus {}", r.genus))?;
    if special {
        let lg = r.linking_graph.as_ref().expect("link");
        certify(lg.matches_template(), || "linking graph shape".into())?;
    }
    Ok(r)
}

/// Circles `x, y, z`: one `x-y` clasp, two `x-z` clasps and `n - 2` `y-z`
/// clasps, every clasp reverse. The boundary of the planar canonical
/// surface has `n` components and polynomial `(-1)^ceil(n/2) z^(n-1)`.
fn three_circle(n: usize) -> SeifertGraph {
    let negatives = (n - 5) / 2;
    let mut edges = vec![
        Edge {
            u: 0,
            v: 1,
            label: -2,
        },
        Edge {
            u: 0,
            v: 2,
            label: 2,
        },
        Edge {
            u: 0,
            v: 2,
            label: 2,
        },
    ];
    for j in 0..n - 2 {
        edges.push(Edge {
            u: 1,
            v: 2,
            label: if j < negatives { -2 } else { 2 },
        });
    }
    let ys: Vec<usize> = (3..n + 1).collect();
    let mut at_z: Vec<usize> = ys.iter().rev().copied().collect();
    at_z.extend([1, 2]);
    let mut at_y = vec![0];
    at_y.extend(ys);
    SeifertGraph {
        edges,
        rotation: vec![vec![2, 1, 0], at_y, at_z],
        ccw: vec![true; 3],
    }
}

/// Inverts `N_k = -(s z)^(k-1) + s z N_(k-1)` down to the two-component term.
fn two_component_target(nabla: &ConwayPoly, n: usize, s: i64) -> Option<ConwayPoly> {
    let mut cur = nabla.clone();
    for k in (3..=n).rev() {
        let p = ConwayPoly::monomial(-s.pow(k as u32 - 1), k as u32 - 1);
        cur = (&cur - &p).shift_down(1)?.scale(s);
    }
    (!cur.is_zero()).then_some(cur)
}

fn by_claspings(nabla: &ConwayPoly, n: usize) -> Result<RealizedLink, ConstructError> {
    for sign in [-1i8, 1] {
        let Some(target) = two_component_target(nabla, n, sign as i64) else {
            continue;
        };
        for lengthen in [false, true] {
            if let Some(r) = clasp_attempt(nabla, n, &target, sign, lengthen)? {
                return Ok(r);
            }
        }
    }
    Err(ConstructError::Certificate(format!(
        "no clasping realizes `{nabla}`"
    )))
}

/// Clasps `n - 2` consecutive crossings of the twist region carrying `a_2`.
/// A clasp against the region's sign switches one of its crossings, so the
/// region is first lengthened to compensate when that case is needed.
fn clasp_attempt(
    nabla: &ConwayPoly,
    n: usize,
    target: &ConwayPoly,
    sign: i8,
    lengthen: bool,
) -> Result<Option<RealizedLink>, ConstructError> {
    let mut a = (&ConwayPoly::one() - &target.shift_up(1)).coeff_vector()?;
    if a.len() < 2 {
        return Ok(None);
    }
    let t = template(&a);
    let label = t.graph.edges[if a.len() >= 3 { t.bands[1] } else { t.last }].label;
    let m = n as i64 - 2;
    if lengthen {
        a[1] -= sign as i64 * m;
    } else if label.signum() != sign as i64 || label.abs() < m {
        return Ok(None);
    }
    let (mut l, sites) = smoothed_template(&a)?;
    let band = &sites[1];
    if band.len() < n - 2 {
        return Ok(None);
    }
    let mut clasp_sites = Vec::with_capacity(n - 2);
    for &k in &band[..n - 2] {
        clasp_sites.push(vec![k, l.crossing_count()]);
        l = clasping(&l, k, sign)?;
    }
    if l.component_count() != n || conway_skein(&l)? != *nabla {
        return Ok(None);
    }
    let maxdeg = nabla.maxdeg().unwrap_or(0) as usize;
    let bound = Some(10.0 * V0 * (2 * maxdeg - n) as f64);
    let mut r = RealizedLink::assemble(nabla, l, clasp_sites, bound)?;
    r.surgery_site = Some([r.clasp_sites[0][0], r.clasp_sites[0][1]]);
    if !r
        .linking_graph
        .as_ref()
        .is_some_and(|g| g.matches_template())
    {
        return Ok(None);
    }
    let chi = r.diagram.seifert_data().chi;
    certify(1 - chi == maxdeg as i64, || {
        format!("degree {maxdeg} differs from 1 - chi = {}", 1 - chi)
    })?;
    Ok(Some(r))
}
