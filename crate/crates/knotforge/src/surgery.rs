//! Rewrites that keep the Conway polynomial: tangle surgery on parallel
//! clasps, concordance pairs, Stallings twists and the families they
//! generate. Every rewrite is checked with the skein evaluator.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construct::RealizedLink;
use crate::diagram::{
    conway_skein, insert_kink, insert_reverse_twist, insert_twist, parallel_pairs, reverse_pairs,
    Crossing, Diagram, DiagramError, Frame, StrandPair, UnionFind,
};
use crate::tangle::{pretzel_diagram, TangleError};
use crate::ConwayPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("k must be nonzero")]
    ZeroK,
    #[error("pretzel parameters must be odd, got ({0}, {1}, {2})")]
    EvenParameter(i64, i64, i64),
    #[error("q_max must be at least 5, got {0}")]
    SmallQMax(i64),
    #[error("crossings {0:?} do not bound a four-ended tangle")]
    NotTangle(Vec<usize>),
    #[error("crossings {sites:?} do not form the tangle S_{k}")]
    SiteMismatch { sites: Vec<usize>, k: i64 },
    #[error("site has sign {found}, the {} surgery needs {expected}", if *mirrored { "mirrored" } else { "plain" })]
    SignMismatch {
        found: i8,
        expected: i8,
        mirrored: bool,
    },
    #[error("polynomial changed from `{before}` to `{after}`")]
    NotPreserved { before: String, after: String },
    #[error("no surgery or twist site in the base diagram")]
    NoSite,
    #[error("internal: {0}")]
    Internal(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Tangle(#[from] TangleError),
}

/// Twist lengths of a surgery tangle for the clasp parameter `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurgeryTriple {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub k: i64,
    pub n: i64,
}

impl SurgeryTriple {
    /// `(p-1)q + (p-1)r + qr + 1 = 0`.
    pub fn satisfies_a(&self) -> bool {
        (self.p - 1) * self.q + (self.p - 1) * self.r + self.q * self.r + 1 == 0
    }

    /// `(p+1)q + (p+1)r + qr + 1 = 4k`.
    pub fn satisfies_b(&self) -> bool {
        (self.p + 1) * self.q + (self.p + 1) * self.r + self.q * self.r + 1 == 4 * self.k
    }

    pub fn is_valid(&self) -> bool {
        self.satisfies_a() && self.satisfies_b() && self.p % 2 == 0 && self.q + self.r == 2 * self.k
    }
}

pub fn surgery_triples(k: i64, n: i64) -> Result<SurgeryTriple, SurgeryError> {
    if k == 0 {
        return Err(SurgeryError::ZeroK);
    }
    let q = 1 + 2 * n * k;
    let r = 2 * k - 1 - 2 * n * k;
    let num = 2 * k - 1 - q * r;
    if num % (2 * k) != 0 {
        return Err(SurgeryError::Internal(format!(
            "p is not integral for k = {k}, n = {n}"
        )));
    }
    let t = SurgeryTriple {
        p: num / (2 * k),
        q,
        r,
        k,
        n,
    };
    if !t.is_valid() {
        return Err(SurgeryError::Internal(format!(
            "triple {t:?} fails its identities"
        )));
    }
    Ok(t)
}

/// `v_2` of the `(a, b, c)` pretzel knot.
pub fn v2_pretzel(a: i64, b: i64, c: i64) -> Result<i64, SurgeryError> {
    if a % 2 == 0 || b % 2 == 0 || c % 2 == 0 {
        return Err(SurgeryError::EvenParameter(a, b, c));
    }
    Ok((a * b + a * c + b * c + 1) / 4)
}

/// Odd `q` in `5..=q_max` with `r = 2 - q` and `p = (q^2 - 2q - 1) / 2`.
pub fn large_volume_triples(q_max: i64) -> Result<Vec<(i64, i64, i64)>, SurgeryError> {
    if q_max < 5 {
        return Err(SurgeryError::SmallQMax(q_max));
    }
    Ok((5..=q_max)
        .step_by(2)
        .map(|q| ((q * q - 2 * q - 1) / 2, q, 2 - q))
        .collect())
}

/// Crossings of a four-ended tangle with its boundary arcs: `sw`, `se`
/// enter it and `nw`, `ne` leave it.
#[derive(Debug, Clone)]
struct Fragment {
    crossings: Vec<Crossing>,
    ports: Frame,
}

impl Fragment {
    /// Close with one crossing of the given sign.
    fn closure(&self, sign: i8) -> Result<Diagram, DiagramError> {
        let p = self.ports;
        let mut xs = self.crossings.clone();
        xs.push(Crossing::from_frame(
            Frame {
                sw: p.nw,
                se: p.ne,
                nw: p.sw,
                ne: p.se,
            },
            sign,
        ));
        let d = Diagram::from_parts(xs, 0).relabeled();
        d.validate()?;
        Ok(d)
    }

    /// The complement of crossing `x` in `d`.
    fn cut(d: &Diagram, x: usize) -> Fragment {
        let f = d.crossings()[x].frame();
        let crossings = d
            .crossings()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != x)
            .map(|(_, c)| *c)
            .collect();
        Fragment {
            crossings,
            ports: Frame {
                sw: f.nw,
                se: f.ne,
                nw: f.sw,
                ne: f.se,
            },
        }
    }
}

/// Boundary arc assignments of the tangle spanned by `site`.
fn site_fragments(d: &Diagram, site: &[usize]) -> Result<Vec<Fragment>, SurgeryError> {
    let inside: HashSet<usize> = site.iter().copied().collect();
    if inside.len() != site.len() || site.iter().any(|&i| i >= d.crossing_count()) {
        return Err(SurgeryError::NotTangle(site.to_vec()));
    }
    let idx = d.index();
    let (mut ins, mut outs) = (Vec::new(), Vec::new());
    for &i in site {
        let x = d.crossings()[i];
        for s in 0..4 {
            let a = x.arcs[s];
            if x.is_in(s) {
                if !inside.contains(&idx.tail[&a].0) {
                    ins.push(a);
                }
            } else if !inside.contains(&idx.head[&a].0) {
                outs.push(a);
            }
        }
    }
    if ins.len() != 2 || outs.len() != 2 {
        return Err(SurgeryError::NotTangle(site.to_vec()));
    }
    let crossings: Vec<Crossing> = site.iter().map(|&i| d.crossings()[i]).collect();
    let mut out = Vec::new();
    for (sw, se) in [(ins[0], ins[1]), (ins[1], ins[0])] {
        for (nw, ne) in [(outs[0], outs[1]), (outs[1], outs[0])] {
            out.push(Fragment {
                crossings: crossings.clone(),
                ports: Frame { sw, se, nw, ne },
            });
        }
    }
    Ok(out)
}

/// Sign `e` such that the fragment closes to `1 + k z^2` with a crossing of
/// sign `e` and to the unknot with sign `-e`.
fn clasp_sign(f: &Fragment, k: i64) -> Option<i8> {
    let plus = ConwayPoly::from_terms([(0, 1), (2, k)]);
    let one = ConwayPoly::one();
    let eval = |s: i8| f.closure(s).ok().and_then(|d| conway_skein(&d).ok());
    let (a, b) = (eval(1)?, eval(-1)?);
    if a == plus && b == one {
        Some(1)
    } else if b == plus && a == one {
        Some(-1)
    } else {
        None
    }
}

/// Replace the crossings of `site` in `d` by `t`, gluing port to port.
fn replace(
    d: &Diagram,
    site: &[usize],
    ports: Frame,
    t: &Fragment,
) -> Result<Diagram, DiagramError> {
    let off = d
        .max_arc()
        .max(ports.sw)
        .max(ports.se)
        .max(ports.nw)
        .max(ports.ne);
    let mut uf = UnionFind::default();
    let tp = t.ports;
    for (a, b) in [
        (tp.sw, ports.sw),
        (tp.se, ports.se),
        (tp.nw, ports.nw),
        (tp.ne, ports.ne),
    ] {
        uf.union(a + off, b);
    }
    let mut xs: Vec<Crossing> = d
        .crossings()
        .iter()
        .enumerate()
        .filter(|(i, _)| !site.contains(i))
        .map(|(_, c)| *c)
        .collect();
    xs.extend(t.crossings.iter().map(|c| Crossing {
        arcs: c.arcs.map(|a| a + off),
        sign: c.sign,
    }));
    for x in &mut xs {
        x.arcs = x.arcs.map(|a| uf.find(a));
    }
    let out = Diagram::from_parts(xs, d.loops()).relabeled();
    out.validate()?;
    Ok(out)
}

/// The surgery tangle: the `(p+1, q, r)` pretzel knot (or `(p-1, q, r)` for
/// negative `p`) with one crossing of the first twist cut out, oriented so
/// that a closing crossing of sign `sign` gives the `(p+1, q, r)` pretzel.
fn surgery_tangle(t: &SurgeryTriple, sign: i8) -> Result<Fragment, SurgeryError> {
    let first = if t.p >= 0 { t.p + 1 } else { t.p - 1 };
    let mut pd = pretzel_diagram(&[first, t.q, t.r])?;
    let x_sign = pd.crossings()[0].sign;
    let plus_sign = if t.p >= 0 { x_sign } else { -x_sign };
    if plus_sign != sign {
        pd = pd.mirror();
    }
    let f = Fragment::cut(&pd, 0);
    if clasp_sign(&f, t.k) != Some(sign) {
        return Err(SurgeryError::Internal(format!(
            "surgery tangle for {t:?} has the wrong closures"
        )));
    }
    Ok(f)
}

fn certify(before: &ConwayPoly, d: &Diagram) -> Result<(), SurgeryError> {
    let after = conway_skein(d)?;
    if after != *before {
        return Err(SurgeryError::NotPreserved {
            before: before.to_string(),
            after: after.to_string(),
        });
    }
    Ok(())
}

/// Replace the tangle `S_k` spanned by `site` with the three-twist tangle of
/// `t`. Plain surgery expects a positive site, mirrored surgery a negative
/// one. Surviving crossings keep their order; the new ones are appended.
pub fn apply_tangle_surgery(
    d: &Diagram,
    site: &[usize],
    t: &SurgeryTriple,
    mirrored: bool,
) -> Result<Diagram, SurgeryError> {
    let expected: i8 = if mirrored { -1 } else { 1 };
    let before = conway_skein(d)?;
    let mut found = None;
    for f in site_fragments(d, site)? {
        let Some(sign) = clasp_sign(&f, t.k) else {
            continue;
        };
        found = Some(sign);
        if sign != expected {
            continue;
        }
        let tangle = surgery_tangle(t, sign)?;
        if let Ok(out) = replace(d, site, f.ports, &tangle) {
            certify(&before, &out)?;
            return Ok(out);
        }
    }
    match found {
        Some(s) if s != expected => Err(SurgeryError::SignMismatch {
            found: s,
            expected,
            mirrored,
        }),
        _ => Err(SurgeryError::SiteMismatch {
            sites: site.to_vec(),
            k: t.k,
        }),
    }
}

fn some_parallel_pair(d: &Diagram) -> Result<(Diagram, StrandPair), SurgeryError> {
    let base = if d.crossing_count() == 0 {
        insert_kink(d, 0, 1, true)?
    } else {
        d.clone()
    };
    let pair = parallel_pairs(&base)
        .into_iter()
        .next()
        .ok_or(SurgeryError::NoSite)?;
    Ok((base, pair))
}

/// Add a positive and a negative parallel clasp next to each other, then
/// surger them with mirrored tangles.
pub fn concordance_pair_surgery(d: &Diagram, t: &SurgeryTriple) -> Result<Diagram, SurgeryError> {
    if t.k != 1 {
        return Err(SurgeryError::SiteMismatch {
            sites: Vec::new(),
            k: t.k,
        });
    }
    let before = conway_skein(d)?;
    let (base, pair) = some_parallel_pair(d)?;
    let m = base.crossing_count();
    let doubled = insert_twist(&base, pair, &[1, 1, -1, -1])?;
    let once = apply_tangle_surgery(&doubled, &[m, m + 1], t, false)?;
    let twice = apply_tangle_surgery(&once, &[m, m + 1], t, true)?;
    certify(&before, &twice)?;
    Ok(twice)
}

/// Insert a full twist of sign `sense` between two strands, parallel or
/// antiparallel. The residual is `sense * z * nabla` of the result with the
/// first new crossing smoothed, so `nabla(result) = nabla(d) + residual`.
pub fn stallings_full_twist(
    d: &Diagram,
    strands: StrandPair,
    sense: i8,
) -> Result<(Diagram, ConwayPoly), SurgeryError> {
    let s = if sense > 0 { 1 } else { -1 };
    let result = if reverse_pairs(d).contains(&strands) {
        insert_reverse_twist(d, strands, 2, s)?
    } else {
        insert_twist(d, strands, &[s, s])?
    };
    let smoothed = result.smooth(d.crossing_count())?;
    let residual = conway_skein(&smoothed)?.shift_up(1).scale(s as i64);
    Ok((result, residual))
}

/// Antiparallel strands on different components with zero residual. Any
/// number of full twists there keeps the polynomial.
pub fn stallings_sites(d: &Diagram) -> Result<Vec<StrandPair>, SurgeryError> {
    let cm = d.component_map();
    let mut out = Vec::new();
    for pair in reverse_pairs(d) {
        if cm[&pair.left] == cm[&pair.right] {
            continue;
        }
        if stallings_full_twist(d, pair, 1)?.1.is_zero() {
            out.push(pair);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilySite {
    Clasp { crossings: [usize; 2], sign: i8 },
    Strands { pair: StrandPair },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyParameter {
    Triple(SurgeryTriple),
    FullTwists(i64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyMember {
    pub parameter: FamilyParameter,
    pub pd: String,
    pub crossings: usize,
    pub verified: bool,
    /// Twist lengths of the surgery tangle, or the number of full twists.
    pub twist_lengths: Vec<i64>,
    /// Pairwise linking numbers, ordered by component pair.
    pub linking_numbers: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub base: RealizedLink,
    pub site: Option<FamilySite>,
    pub members: Vec<FamilyMember>,
    /// Properties asserted without a computational check.
    pub annotations: Vec<String>,
}

impl FamilySpec {
    /// One JSON object per member.
    pub fn to_json_lines(&self) -> String {
        self.members
            .iter()
            .map(|m| serde_json::to_string(m).expect("serializable") + "\n")
            .collect()
    }
}

fn linking_numbers(d: &Diagram) -> Result<Vec<i64>, DiagramError> {
    let n = d.component_count();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(d.linking_number(i, j)?);
        }
    }
    Ok(out)
}

fn member(
    parameter: FamilyParameter,
    d: &Diagram,
    twist_lengths: Vec<i64>,
    nabla: &ConwayPoly,
) -> Result<FamilyMember, SurgeryError> {
    certify(nabla, d)?;
    Ok(FamilyMember {
        parameter,
        pd: d.to_string(),
        crossings: d.crossing_count(),
        verified: true,
        twist_lengths,
        linking_numbers: linking_numbers(d)?,
    })
}

/// Run `f` over `0..count` on scoped threads, keeping index order.
fn par_map<T: Send>(count: usize, f: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(count.max(1));
    let f = &f;
    let mut slots: Vec<Option<T>> = (0..count).map(|_| None).collect();
    std::thread::scope(|s| {
        let chunks: Vec<_> = slots
            .chunks_mut(count.div_ceil(workers).max(1))
            .enumerate()
            .map(|(c, chunk)| {
                let start = c * count.div_ceil(workers).max(1);
                s.spawn(move || {
                    for (i, slot) in chunk.iter_mut().enumerate() {
                        *slot = Some(f(start + i));
                    }
                })
            })
            .collect();
        for h in chunks {
            h.join().expect("worker panicked");
        }
    });
    slots.into_iter().map(|s| s.expect("filled")).collect()
}

/// Tangle surgeries with `k = 1` and `n = 1..=count` at the marked clasp.
pub fn enumerate_surgery_family(
    base: &RealizedLink,
    count: usize,
) -> Result<FamilySpec, SurgeryError> {
    let [a, b] = base.surgery_site.ok_or(SurgeryError::NoSite)?;
    let sign = base.diagram.crossings()[a].sign;
    let members = par_map(count, |i| -> Result<FamilyMember, SurgeryError> {
        let t = surgery_triples(1, i as i64 + 1)?;
        let d = apply_tangle_surgery(&base.diagram, &[a, b], &t, sign < 0)?;
        member(
            FamilyParameter::Triple(t),
            &d,
            vec![t.p, t.q, t.r],
            &base.nabla,
        )
    });
    Ok(FamilySpec {
        base: base.clone(),
        site: Some(FamilySite::Clasp {
            crossings: [a, b],
            sign,
        }),
        members: members.into_iter().collect::<Result<_, _>>()?,
        annotations: vec![
            "tangle surgery keeps the smooth slice Euler characteristic (not checked)".into(),
        ],
    })
}

/// Repeated positive full twists at the first Stallings site.
pub fn enumerate_stallings_family(
    base: &RealizedLink,
    count: usize,
) -> Result<FamilySpec, SurgeryError> {
    let pair = *stallings_sites(&base.diagram)?
        .first()
        .ok_or(SurgeryError::NoSite)?;
    let members = par_map(count, |i| -> Result<FamilyMember, SurgeryError> {
        let j = i as i64 + 1;
        let d = insert_reverse_twist(&base.diagram, pair, 2 * (i + 1), 1)?;
        member(FamilyParameter::FullTwists(j), &d, vec![j], &base.nabla)
    });
    Ok(FamilySpec {
        base: base.clone(),
        site: Some(FamilySite::Strands { pair }),
        members: members.into_iter().collect::<Result<_, _>>()?,
        annotations: vec!["members are told apart by linking numbers only".into()],
    })
}

/// Stallings twists for links with at least four components when a site
/// exists, tangle surgery at the marked clasp otherwise.
pub fn enumerate_family(base: &RealizedLink, count: usize) -> Result<FamilySpec, SurgeryError> {
    if count == 0 {
        return Ok(FamilySpec {
            base: base.clone(),
            site: None,
            members: Vec::new(),
            annotations: Vec::new(),
        });
    }
    if base.n >= 4 {
        match enumerate_stallings_family(base, count) {
            Err(SurgeryError::NoSite) => {}
            r => return r,
        }
    }
    enumerate_surgery_family(base, count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{realize_knot, realize_link_n};
    use crate::diagram::samples::trefoil;

    #[test]
    fn triples() {
        let t = surgery_triples(1, 2).unwrap();
        assert_eq!((t.p, t.q, t.r), (8, 5, -3));
        let t = surgery_triples(1, 0).unwrap();
        assert_eq!((t.p, t.q, t.r), (0, 1, 1));
        let t = surgery_triples(2, 1).unwrap();
        assert_eq!((t.p, t.q, t.r), (2, 5, -1));
        assert_eq!(surgery_triples(0, 1), Err(SurgeryError::ZeroK));
    }

    #[test]
    fn v2_values() {
        assert_eq!(v2_pretzel(1, 1, 1).unwrap(), 1);
        assert_eq!(v2_pretzel(-3, 5, 7).unwrap(), 0);
        assert!(v2_pretzel(2, 1, 1).is_err());
    }

    #[test]
    fn volume_triples() {
        let v = large_volume_triples(7).unwrap();
        assert_eq!(v, vec![(7, 5, -3), (17, 7, -5)]);
    }

    #[test]
    fn trefoil_surgery() {
        let t = trefoil();
        let sign = t.crossings()[0].sign;
        for n in -2..=2 {
            let tr = surgery_triples(1, n).unwrap();
            let d = apply_tangle_surgery(&t, &[0, 1], &tr, sign < 0).unwrap();
            assert_eq!(conway_skein(&d).unwrap(), conway_skein(&t).unwrap());
            assert_eq!(d.component_count(), 1);
        }
        let tr = surgery_triples(1, 2).unwrap();
        assert!(matches!(
            apply_tangle_surgery(&t, &[0, 1], &tr, sign > 0),
            Err(SurgeryError::SignMismatch { .. })
        ));
    }

    #[test]
    fn concordance_pairs() {
        let tr = surgery_triples(1, 2).unwrap();
        for d in [Diagram::unknot(), trefoil()] {
            let out = concordance_pair_surgery(&d, &tr).unwrap();
            assert_eq!(conway_skein(&out).unwrap(), conway_skein(&d).unwrap());
            assert!(d.seifert_data().chi - out.seifert_data().chi <= 4);
        }
    }

    #[test]
    fn realized_clasps() {
        for s in ["1 + z^2", "1 - 2z^2 + 2z^4", "1 + 3z^2 - z^4 + 2z^6"] {
            let r = realize_knot(&s.parse().unwrap()).unwrap();
            let f = enumerate_family(&r, 3).unwrap();
            assert_eq!(f.members.len(), 3);
            assert!(f
                .members
                .windows(2)
                .all(|w| w[0].crossings < w[1].crossings));
            assert_eq!(f.to_json_lines().lines().count(), 3);
        }
        assert!(
            enumerate_family(&realize_knot(&"1 + z^2".parse().unwrap()).unwrap(), 0)
                .unwrap()
                .members
                .is_empty()
        );
    }

    #[test]
    fn stallings_family() {
        for s in ["z^3", "2z^3 + z^5"] {
            let r = realize_link_n(&s.parse().unwrap(), 4, false).unwrap();
            let f = enumerate_family(&r, 3).unwrap();
            assert!(matches!(f.site, Some(FamilySite::Strands { .. })));
            assert!(f.members.iter().all(|m| m.verified));
            let totals: Vec<i64> = f
                .members
                .iter()
                .map(|m| m.linking_numbers.iter().sum())
                .collect();
            assert!(totals.windows(2).all(|w| w[0] < w[1]), "{totals:?}");
        }
        let r = realize_link_n(&"z^3 + z^5".parse().unwrap(), 4, false).unwrap();
        let f = enumerate_family(&r, 2).unwrap();
        assert!(matches!(f.site, Some(FamilySite::Clasp { .. })));
    }

    #[test]
    fn full_twist_residual() {
        use crate::diagram::samples::figure_eight;
        for d in [trefoil(), figure_eight()] {
            let pairs = parallel_pairs(&d).into_iter().chain(reverse_pairs(&d));
            for pair in pairs {
                for sense in [1, -1] {
                    let (e, res) = stallings_full_twist(&d, pair, sense).unwrap();
                    assert_eq!(conway_skein(&e).unwrap(), &conway_skein(&d).unwrap() + &res);
                }
            }
        }
        let t = trefoil();
        for pair in parallel_pairs(&t) {
            let undone = insert_twist(&t, pair, &[1, 1, -1, -1]).unwrap();
            assert_eq!(conway_skein(&undone).unwrap(), conway_skein(&t).unwrap());
        }
    }
}
