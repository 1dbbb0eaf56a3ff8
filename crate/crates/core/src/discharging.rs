//! Charges, transfer rules and the outer-face balance.
//!
//! Every vertex starts with `2d(v) - 6`, every internal face with
//! `d(f) - 6` and the outer face `D` with `d(D) + 6`; Euler's formula
//! makes the total zero. All arithmetic is exact.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::plane_graph::{FaceId, GraphError, Plane, Vertex};
use crate::structure::{find_sinks, sinks_by_source, special_faces};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DischargeError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {vertex} would split a negative remainder {remainder} evenly")]
    NegativeEvenShare { vertex: Vertex, remainder: Charge },
    #[error("outer face has degree {0} > 6")]
    OuterTooLarge(usize),
}

/// An exact rational charge, written `p/q` in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Charge(pub BigRational);

impl Charge {
    pub fn new(p: i64, q: i64) -> Self {
        Charge(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn int(p: i64) -> Self {
        Charge::new(p, 1)
    }

    pub fn zero() -> Self {
        Charge(BigRational::zero())
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Charge {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (p, q) = s.split_once('/').unwrap_or((s, "1"));
        let p: BigInt = p.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let q: BigInt = q.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if q.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Charge(BigRational::new(p, q)))
    }
}

impl Serialize for Charge {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Charge {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl std::ops::Add for &Charge {
    type Output = Charge;
    fn add(self, o: &Charge) -> Charge {
        Charge(&self.0 + &o.0)
    }
}

impl std::ops::Sub for &Charge {
    type Output = Charge;
    fn sub(self, o: &Charge) -> Charge {
        Charge(&self.0 - &o.0)
    }
}

impl std::ops::Mul<i64> for &Charge {
    type Output = Charge;
    fn mul(self, k: i64) -> Charge {
        Charge(&self.0 * BigInt::from(k))
    }
}

impl std::ops::AddAssign<&Charge> for Charge {
    fn add_assign(&mut self, o: &Charge) {
        self.0 += &o.0;
    }
}

impl std::ops::SubAssign<&Charge> for Charge {
    fn sub_assign(&mut self, o: &Charge) {
        self.0 -= &o.0;
    }
}

impl std::iter::Sum for Charge {
    fn sum<I: Iterator<Item = Charge>>(it: I) -> Charge {
        it.fold(Charge::zero(), |acc, c| &acc + &c)
    }
}

/// A vertex or a face; the outer face is a face like any other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Vertex(Vertex),
    Face(FaceId),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v{v}"),
            Element::Face(id) => write!(f, "{id}"),
        }
    }
}

impl FromStr for Element {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("bad element {s:?}");
        match s.split_at_checked(1) {
            Some(("v", n)) => n.parse().map(Element::Vertex).map_err(|_| bad()),
            Some(("f", n)) => n.parse().map(|n| Element::Face(FaceId(n))).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Rule {
    R1a,
    R1b,
    R2a,
    R2b,
    R3,
    #[serde(rename = "R4-in")]
    R4In,
    #[serde(rename = "R4-out")]
    R4Out,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::R1a => "R1a",
            Rule::R1b => "R1b",
            Rule::R2a => "R2a",
            Rule::R2b => "R2b",
            Rule::R3 => "R3",
            Rule::R4In => "R4-in",
            Rule::R4Out => "R4-out",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transfer {
    pub from: Element,
    pub to: Element,
    pub amount: Charge,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeLedger {
    pub initial: BTreeMap<Element, Charge>,
    pub transfers: Vec<Transfer>,
    pub final_charges: BTreeMap<Element, Charge>,
}

impl ChargeLedger {
    pub fn initial_sum(&self) -> Charge {
        self.initial.values().cloned().sum()
    }

    pub fn final_sum(&self) -> Charge {
        self.final_charges.values().cloned().sum()
    }

    pub fn final_of(&self, e: Element) -> &Charge {
        &self.final_charges[&e]
    }

    /// Recomputes finals from initials and the transfer log.
    pub fn replay(&self) -> BTreeMap<Element, Charge> {
        let mut out = self.initial.clone();
        for t in &self.transfers {
            *out.get_mut(&t.from).expect("known element") -= &t.amount;
            *out.get_mut(&t.to).expect("known element") += &t.amount;
        }
        out
    }

    pub fn transfers_from(&self, e: Element) -> impl Iterator<Item = &Transfer> {
        self.transfers.iter().filter(move |t| t.from == e)
    }

    pub fn transfers_to(&self, e: Element) -> impl Iterator<Item = &Transfer> {
        self.transfers.iter().filter(move |t| t.to == e)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

/// Initial charges; finals equal initials until rules are applied.
pub fn initial_charges(plane: &Plane) -> Result<ChargeLedger, GraphError> {
    let outer = plane.outer()?;
    let mut initial = BTreeMap::new();
    for v in 0..plane.vertex_count() {
        initial.insert(Element::Vertex(v), Charge::int(2 * plane.graph().degree(v) as i64 - 6));
    }
    for f in plane.faces() {
        let d = f.degree() as i64;
        let mu = if f.id == outer { d + 6 } else { d - 6 };
        initial.insert(Element::Face(f.id), Charge::int(mu));
    }
    Ok(ChargeLedger { final_charges: initial.clone(), initial, transfers: Vec::new() })
}

/// How a face looks from an incident vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Seen {
    Triangle {
        special: bool,
    },
    /// An internal 4- or 5-face avoiding `D`.
    F45,
    Other,
}

fn seen(plane: &Plane, f: FaceId, special: &BTreeSet<FaceId>) -> Seen {
    let face = plane.face(f);
    match face.degree() {
        3 => Seen::Triangle { special: special.contains(&f) },
        4 | 5 if !plane.face_meets_outer(f) => Seen::F45,
        _ => Seen::Other,
    }
}

/// Applies R1-R4 to a ledger fresh from [`initial_charges`].
///
/// Vertices of degree at most 3 off `D`, and 4-vertices with three or more
/// incident 3-faces, fall outside every rule and keep their charge.
pub fn apply_rules(plane: &Plane, ledger: &ChargeLedger) -> Result<ChargeLedger, DischargeError> {
    let outer = plane.outer()?;
    let special: BTreeSet<FaceId> = special_faces(plane)?.into_iter().collect();
    let sinks = sinks_by_source(&find_sinks(plane)?);
    let half = Charge::new(1, 2);
    let quarter = Charge::new(1, 4);
    let one = Charge::int(1);
    let five_quarters = Charge::new(5, 4);
    let mut transfers = Vec::new();

    for v in 0..plane.vertex_count() {
        let from = Element::Vertex(v);
        if plane.on_outer(v) {
            transfers.push(Transfer {
                from,
                to: Element::Face(outer),
                amount: ledger.initial[&from].clone(),
                rule: Rule::R4In,
            });
            continue;
        }
        let d = plane.graph().degree(v);
        let faces = plane.face_set().incident_faces(v).to_vec();
        let t = plane.incident_triangle_count(v);
        let near_d = plane.touches_outer(v);
        let my_sinks = sinks.get(&v).cloned().unwrap_or_default();
        let mut out: Vec<(FaceId, Charge, Rule)> = Vec::new();
        // faces given to by "the rest evenly"
        let mut rest_to: Option<(Rule, Vec<FaceId>)> = None;

        match d {
            4 if t <= 1 && !near_d => {
                out.extend(faces.iter().map(|&f| (f, half.clone(), Rule::R1a)));
            }
            4 if t <= 1 => {
                let mut others = Vec::new();
                for &f in &faces {
                    match seen(plane, f, &special) {
                        Seen::Triangle { .. } => out.push((f, one.clone(), Rule::R1a)),
                        Seen::F45 => out.push((f, half.clone(), Rule::R1a)),
                        Seen::Other => others.push(f),
                    }
                }
                rest_to = Some((Rule::R1a, others));
            }
            4 if t == 2 => {
                for &f in &faces {
                    if let Seen::Triangle { .. } = seen(plane, f, &special) {
                        out.push((f, one.clone(), Rule::R1b));
                    }
                }
            }
            5 if !near_d => {
                for &f in &faces {
                    let amount = match seen(plane, f, &special) {
                        Seen::Triangle { special: true } => five_quarters.clone(),
                        Seen::Triangle { special: false } => one.clone(),
                        _ => half.clone(),
                    };
                    out.push((f, amount, Rule::R2a));
                }
                out.extend(my_sinks.iter().map(|&s| (s, quarter.clone(), Rule::R2a)));
            }
            5 => {
                let mut others = Vec::new();
                for &f in &faces {
                    match seen(plane, f, &special) {
                        Seen::Triangle { .. } => out.push((f, five_quarters.clone(), Rule::R2b)),
                        Seen::F45 => out.push((f, half.clone(), Rule::R2b)),
                        Seen::Other => others.push(f),
                    }
                }
                out.extend(my_sinks.iter().map(|&s| (s, quarter.clone(), Rule::R2b)));
                rest_to = Some((Rule::R2b, others));
            }
            d if d >= 6 => {
                for &f in &faces {
                    let amount = match seen(plane, f, &special) {
                        Seen::Triangle { .. } => five_quarters.clone(),
                        _ => half.clone(),
                    };
                    out.push((f, amount, Rule::R3));
                }
                out.extend(my_sinks.iter().map(|&s| (s, quarter.clone(), Rule::R3)));
            }
            _ => {}
        }

        if let Some((rule, others)) = rest_to {
            let given: Charge = out.iter().map(|(_, c, _)| c.clone()).sum();
            let remainder = &ledger.initial[&from] - &given;
            if !others.is_empty() && !remainder.is_zero() {
                if remainder.is_negative() {
                    return Err(DischargeError::NegativeEvenShare { vertex: v, remainder });
                }
                let share = Charge(&remainder.0 / BigInt::from(others.len()));
                out.extend(others.into_iter().map(|f| (f, share.clone(), rule)));
            }
        }
        transfers.extend(out.into_iter().map(|(f, amount, rule)| Transfer {
            from,
            to: Element::Face(f),
            amount,
            rule,
        }));
    }

    let two = Charge::int(2);
    let seven_quarters = Charge::new(7, 4);
    for f in plane.internal_faces() {
        if plane.face_meets_outer(f.id) {
            let amount = if f.degree() == 3 { two.clone() } else { seven_quarters.clone() };
            transfers.push(Transfer { from: Element::Face(outer), to: Element::Face(f.id), amount, rule: Rule::R4Out });
        }
    }

    transfers.sort_by_key(|t| (t.rule, t.from, t.to));
    let mut out = ChargeLedger { initial: ledger.initial.clone(), transfers, final_charges: BTreeMap::new() };
    out.final_charges = out.replay();
    Ok(out)
}

/// Initial charges followed by the rules.
pub fn discharge(plane: &Plane) -> Result<ChargeLedger, DischargeError> {
    apply_rules(plane, &initial_charges(plane)?)
}

/// Per-edge accounting of what `D` owes the faces meeting it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeBudget {
    /// Edges with exactly one end on `D`.
    pub spokes: Vec<(Vertex, Vertex)>,
    /// Spokes whose two sides draw more than 15/8 in total.
    pub overdrawn: Vec<((Vertex, Vertex), Charge)>,
    /// Faces meeting `D` on fewer than two spokes.
    pub underfunded: Vec<FaceId>,
    pub feasible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Balance {
    pub outer_degree: usize,
    pub six_minus_outer_degree: i64,
    pub outer_edges_out: usize,
    /// Sum over `D` of `d(v) - 2`; equals `outer_edges_out` when `D` is chordless.
    pub outer_degree_excess: i64,
    pub f3_prime: usize,
    pub f4plus_prime: usize,
    /// `2|F_3'| + 7/4 * sum_{k>=4} |F_k'|`.
    pub face_demand: Charge,
    /// `6 - d(D) + 2 e(D, V - D) - face_demand`.
    pub spoke_form: Charge,
    pub edge_budget: EdgeBudget,
}

/// The outer-face closed form from initial charges and face counts.
pub fn closed_form_outer(plane: &Plane) -> Result<Charge, GraphError> {
    let outer = plane.outer()?;
    let d = plane.face(outer).degree() as i64;
    let vertex_sum: i64 = plane.face(outer).vertex_set().iter().map(|&v| 2 * plane.graph().degree(v) as i64 - 6).sum();
    let (f3, f4) = prime_counts(plane);
    Ok(&(&Charge::int(d + 6 + vertex_sum) - &Charge::int(2 * f3 as i64)) - &(&Charge::new(7, 4) * f4 as i64))
}

fn prime_counts(plane: &Plane) -> (usize, usize) {
    let mut f3 = 0;
    let mut f4 = 0;
    for f in plane.internal_faces().filter(|f| plane.face_meets_outer(f.id)) {
        if f.degree() == 3 {
            f3 += 1;
        } else {
            f4 += 1;
        }
    }
    (f3, f4)
}

pub fn outer_balance(plane: &Plane) -> Result<Balance, DischargeError> {
    let outer = plane.outer()?;
    let d = plane.face(outer).degree();
    if d > 6 {
        return Err(DischargeError::OuterTooLarge(d));
    }
    let g = plane.graph();
    let spokes: Vec<(Vertex, Vertex)> =
        g.edges().into_iter().filter(|&(u, v)| plane.on_outer(u) != plane.on_outer(v)).collect();
    let excess: i64 = plane.face(outer).vertex_set().iter().map(|&v| plane.graph().degree(v) as i64 - 2).sum();
    let (f3, f4) = prime_counts(plane);
    let face_demand = &(&Charge::int(2) * f3 as i64) + &(&Charge::new(7, 4) * f4 as i64);
    let e = spokes.len() as i64;
    let spoke_form = &Charge::int(6 - d as i64 + 2 * e) - &face_demand;

    let draw = |f: FaceId| if plane.face(f).degree() == 3 { Charge::int(1) } else { Charge::new(7, 8) };
    let cap = Charge::new(15, 8);
    let mut overdrawn = Vec::new();
    let mut spoke_count: BTreeMap<FaceId, usize> = BTreeMap::new();
    for &(u, v) in &spokes {
        let (a, b) = plane.faces_sharing_edge(u, v)?;
        let load = if a == b { draw(a) } else { &draw(a) + &draw(b) };
        *spoke_count.entry(a).or_default() += 1;
        if b != a {
            *spoke_count.entry(b).or_default() += 1;
        }
        if load > cap {
            overdrawn.push(((u, v), load));
        }
    }
    let underfunded: Vec<FaceId> = plane
        .internal_faces()
        .filter(|f| plane.face_meets_outer(f.id) && spoke_count.get(&f.id).copied().unwrap_or(0) < 2)
        .map(|f| f.id)
        .collect();
    let feasible = overdrawn.is_empty() && underfunded.is_empty();
    Ok(Balance {
        outer_degree: d,
        six_minus_outer_degree: 6 - d as i64,
        outer_edges_out: spokes.len(),
        outer_degree_excess: excess,
        f3_prime: f3,
        f4plus_prime: f4,
        face_demand,
        spoke_form,
        edge_budget: EdgeBudget { spokes, overdrawn, underfunded, feasible },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DischargeReport {
    /// Vertices and internal faces with negative final charge.
    pub negative_elements: Vec<(Element, Charge)>,
    pub outer: FaceId,
    pub outer_final: Charge,
    pub outer_closed_form: Charge,
    pub closed_form_matches: bool,
    pub initial_sum: Charge,
    pub final_sum: Charge,
    pub conservation_ok: bool,
    /// Absent when `d(D) > 6`.
    pub balance: Option<Balance>,
}

impl DischargeReport {
    pub fn all_nonnegative(&self) -> bool {
        self.negative_elements.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

pub fn verify(plane: &Plane, ledger: &ChargeLedger) -> Result<DischargeReport, DischargeError> {
    let outer = plane.outer()?;
    let outer_el = Element::Face(outer);
    let replayed = ledger.replay();
    let negative_elements = ledger
        .final_charges
        .iter()
        .filter(|(e, c)| **e != outer_el && c.is_negative())
        .map(|(e, c)| (*e, c.clone()))
        .collect();
    let initial_sum = ledger.initial_sum();
    let final_sum = ledger.final_sum();
    let outer_final = ledger.final_of(outer_el).clone();
    let outer_closed_form = closed_form_outer(plane)?;
    let balance = match outer_balance(plane) {
        Ok(b) => Some(b),
        Err(DischargeError::OuterTooLarge(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(DischargeReport {
        negative_elements,
        outer,
        closed_form_matches: outer_final == outer_closed_form,
        outer_final,
        outer_closed_form,
        conservation_ok: initial_sum.is_zero() && final_sum.is_zero() && replayed == ledger.final_charges,
        initial_sum,
        final_sum,
        balance,
    })
}
