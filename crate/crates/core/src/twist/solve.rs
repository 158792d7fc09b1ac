use crate::exactfield::{adjoin_sqrt, int, Rational, TowerCtx, TowerElem};
use crate::geom::{cayley_rotation, Rotation3, SpherePoint};

use super::circle::{interpolate_circle, CirclePoint};
use super::map::{twisting_map, TwistingMap};
use super::TwistError;

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Largest Cayley parameter height searched for axes.
    pub height_cap: u32,
    /// Height bound for the single-twist attempt at each stage; 0 disables it.
    pub fast_path_height: u32,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            height_cap: 64,
            fast_path_height: 4,
        }
    }
}

/// Twisting maps in application order; their composition carries `P_j` to `Q_j`.
#[derive(Clone, Debug, Default)]
pub struct Solution {
    pub twists: Vec<TwistingMap>,
}

impl Solution {
    pub fn apply(&self, p: &SpherePoint) -> SpherePoint {
        self.twists.iter().fold(p.trimmed(), |acc, t| t.apply(&acc))
    }

    pub fn len(&self) -> usize {
        self.twists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.twists.is_empty()
    }
}

pub fn transitivity_solve(p: &[SpherePoint], q: &[SpherePoint]) -> Result<Solution, TwistError> {
    transitivity_solve_with(p, q, &SolveOptions::default())
}

/// Moves one point per stage with at most two twists, keeping every other
/// point fixed through identity interpolation nodes.
pub fn transitivity_solve_with(
    p: &[SpherePoint],
    q: &[SpherePoint],
    opts: &SolveOptions,
) -> Result<Solution, TwistError> {
    if p.len() != q.len() {
        return Err(TwistError::LengthMismatch(p.len(), q.len()));
    }
    for pts in [p, q] {
        for (i, a) in pts.iter().enumerate() {
            if !a.is_rational() {
                return Err(TwistError::NonRationalInput(a.to_string()));
            }
            if pts[..i].contains(a) {
                return Err(TwistError::DuplicateInput(a.to_string()));
            }
        }
    }
    let mut cur: Vec<SpherePoint> = p.iter().map(SpherePoint::trimmed).collect();
    let mut twists = Vec::new();
    for j in 0..cur.len() {
        let target = q[j].trimmed();
        if cur[j] == target {
            continue;
        }
        let collide = (0..cur.len()).find(|&k| k != j && cur[k] == target);
        let fast = match collide {
            None => single_twist(&cur, j, &target, opts.fast_path_height).map(|t| vec![t]),
            Some(_) => None,
        };
        let stage = fast
            .or_else(|| two_twists(&cur, j, &target, collide, opts.height_cap))
            .ok_or(TwistError::SearchExhausted {
                stage: j,
                cap: opts.height_cap,
            })?;
        for t in &stage {
            for c in cur.iter_mut() {
                *c = t.apply(c);
            }
        }
        if cur[j] != target {
            return Err(TwistError::Verification(format!("stage {j} missed its target")));
        }
        twists.extend(stage);
    }
    let sol = Solution { twists };
    for (a, b) in p.iter().zip(q) {
        if sol.apply(a) != *b {
            return Err(TwistError::Verification(format!("{a} does not reach {b}")));
        }
    }
    Ok(sol)
}

/// Integer Cayley parameters by increasing max-norm, lexicographic within a shell.
fn cayley_params(cap: u32) -> impl Iterator<Item = Rotation3> {
    (0..=cap as i64).flat_map(|h| {
        let r = -h..=h;
        r.clone()
            .flat_map(move |a| (-h..=h).flat_map(move |b| (-h..=h).map(move |c| (a, b, c))))
            .filter(move |(a, b, c)| a.abs().max(b.abs()).max(c.abs()) == h)
            .map(|(a, b, c)| cayley_rotation(&int(a), &int(b), &int(c)))
    })
}

fn rational(t: &TowerElem) -> Rational {
    t.to_rational().expect("rational stage data")
}

/// Rotation taking `from` to `to`, both planar vectors of squared length `r2`.
fn ratio(from: (&TowerElem, &TowerElem), to: (&TowerElem, &TowerElem), r2: &TowerElem) -> CirclePoint {
    let to = CirclePoint::unchecked(to.0.clone(), to.1.clone());
    let from = CirclePoint::unchecked(from.0.clone(), from.1.clone());
    let w = to.mul(&from.conj());
    CirclePoint::unchecked((&w.re / r2).trimmed(), (&w.im / r2).trimmed())
}

fn identity_nodes(levels: impl Iterator<Item = TowerElem>, taken: &[TowerElem]) -> Vec<(TowerElem, CirclePoint)> {
    let mut out: Vec<(TowerElem, CirclePoint)> = Vec::new();
    for l in levels {
        let pole = l.abs().is_one();
        if !pole && !taken.contains(&l) && !out.iter().any(|(m, _)| *m == l) {
            out.push((l, CirclePoint::one()));
        }
    }
    out
}

/// One twist about an axis on which the moving point and its target share a level.
fn single_twist(cur: &[SpherePoint], j: usize, target: &SpherePoint, height: u32) -> Option<TwistingMap> {
    if height == 0 {
        return None;
    }
    let (m, one) = (&cur[j], TowerElem::one());
    for frame in cayley_params(height) {
        let u = frame.axis();
        let a = m.dot(u);
        if target.dot(u) != a || a.abs() == one {
            continue;
        }
        let levels: Vec<TowerElem> = (0..cur.len()).filter(|&k| k != j).map(|k| cur[k].dot(u)).collect();
        if levels.contains(&a) {
            continue;
        }
        let (r1, r2) = (frame.row(0), frame.row(1));
        let w = ratio(
            (&m.dot(r1), &m.dot(r2)),
            (&target.dot(r1), &target.dot(r2)),
            &(&one - &a.square()),
        );
        let mut nodes = vec![(a.clone(), w)];
        nodes.extend(identity_nodes(levels.into_iter(), &[a]));
        let profile = interpolate_circle(&nodes).ok()?;
        return Some(twisting_map(profile, frame));
    }
    None
}

fn two_twists(
    cur: &[SpherePoint],
    j: usize,
    target: &SpherePoint,
    evict: Option<usize>,
    cap: u32,
) -> Option<Vec<TwistingMap>> {
    let one = TowerElem::one();
    let m = &cur[j];
    let others: Vec<usize> = (0..cur.len()).filter(|&k| k != j).collect();
    let evict_turn = CirclePoint::from_rationals((3, 5), (4, 5)).expect("a unit vector");
    for frame in cayley_params(cap) {
        let [r1, r2, r3] = frame.rows().clone();
        let a = m.dot(&r3);
        let b = target.dot(&r1);
        let rad = &(&one - &a.square()) - &b.square();
        if rad.sign() <= 0 {
            continue;
        }
        let ulev: Vec<TowerElem> = others.iter().map(|&k| cur[k].dot(&r3)).collect();
        if ulev.contains(&a) {
            continue;
        }
        // positions after the first twist, other than the moving point
        let mut moved: Vec<SpherePoint> = others.iter().map(|&k| cur[k].clone()).collect();
        let mut ev_node = None;
        if let Some(e) = evict {
            let i = others.iter().position(|&k| k == e).expect("evicted point is another point");
            let le = &ulev[i];
            if le.abs() == one || ulev.iter().enumerate().any(|(k, l)| k != i && l == le) {
                continue;
            }
            let (x, y) = (cur[e].dot(&r1), cur[e].dot(&r2));
            let w = evict_turn.mul(&CirclePoint::unchecked(x, y));
            let back = frame.transpose().apply(&[w.re, w.im, le.clone()]);
            moved[i] = SpherePoint::new(back[0].clone(), back[1].clone(), back[2].clone())
                .expect("rotation preserves the sphere");
            ev_node = Some((le.clone(), evict_turn.clone()));
        }
        let vlev: Vec<TowerElem> = moved.iter().map(|p| p.dot(&r1)).collect();
        if vlev.contains(&b) {
            continue;
        }
        // in the first frame the point lands on (b, y, a)
        let Ok((_, y)) = adjoin_sqrt(&TowerCtx::rationals(), &rational(&rad)) else {
            continue;
        };
        let w1 = ratio((&m.dot(&r1), &m.dot(&r2)), (&b, &y), &(&one - &a.square()));
        let mut nodes = vec![(a.clone(), w1)];
        let mut taken = vec![a.clone()];
        if let Some(node) = ev_node {
            taken.push(node.0.clone());
            nodes.push(node);
        }
        let skip = evict.map(|e| others.iter().position(|&k| k == e).unwrap());
        nodes.extend(identity_nodes(
            ulev.iter().enumerate().filter(|(i, _)| Some(*i) != skip).map(|(_, l)| l.clone()),
            &taken,
        ));
        let Ok(p1) = interpolate_circle(&nodes) else { continue };

        let w2 = ratio(
            (&y, &a),
            (&target.dot(&r2), &target.dot(&r3)),
            &(&one - &b.square()),
        );
        let mut nodes = vec![(b.clone(), w2)];
        nodes.extend(identity_nodes(vlev.into_iter(), std::slice::from_ref(&b)));
        let Ok(p2) = interpolate_circle(&nodes) else { continue };

        let t1 = twisting_map(p1, frame.clone());
        let t2 = twisting_map(p2, frame.cycled_to_pole(0));
        return Some(vec![t1, t2]);
    }
    None
}
