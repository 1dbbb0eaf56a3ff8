//! Hand-built local configurations: reduction gadgets, the sink gadget and
//! the fixtures whose final charges are pinned in tests.

use std::collections::BTreeSet;

use crate::discharging::{Charge, Element};
use crate::plane_graph::{FaceId, Plane, PlaneGraph, Vertex};
use crate::reductions::{Config, ConfigKind};

/// A straight-line drawing under construction.
#[derive(Default)]
struct Drawing {
    pts: Vec<(f64, f64)>,
    edges: Vec<(Vertex, Vertex)>,
}

impl Drawing {
    fn at(&mut self, x: f64, y: f64) -> Vertex {
        self.pts.push((x, y));
        self.pts.len() - 1
    }

    fn polar(&mut self, r: f64, degrees: f64) -> Vertex {
        let a = degrees.to_radians();
        self.at(r * a.cos(), r * a.sin())
    }

    fn edge(&mut self, u: Vertex, v: Vertex) {
        self.edges.push((u, v));
    }

    fn path(&mut self, vs: &[Vertex]) {
        for w in vs.windows(2) {
            self.edge(w[0], w[1]);
        }
    }

    fn cycle(&mut self, vs: &[Vertex]) {
        self.path(vs);
        self.edge(vs[vs.len() - 1], vs[0]);
    }

    fn plane(self, outer: &[Vertex]) -> Plane {
        let g = PlaneGraph::from_straight_line(&self.pts, &self.edges).expect("gadget drawing");
        Plane::new(g).expect("connected gadget").with_outer_boundary(outer).expect("outer boundary")
    }
}

fn face_with(plane: &Plane, vs: &[Vertex]) -> FaceId {
    let want: BTreeSet<Vertex> = vs.iter().copied().collect();
    plane.faces().iter().find(|f| f.vertex_set() == want && f.degree() == vs.len()).expect("face present").id
}

#[derive(Debug, Clone)]
pub struct ConfigGadget {
    pub name: String,
    pub plane: Plane,
    pub config: Config,
}

pub const CONFIG_GADGET_VARIANTS: u64 = 10;

/// `(rows, cols, r, c)`: grid size and the position of `v`.
const GRID_VARIANTS: [(usize, usize, usize, usize); 7] =
    [(5, 5, 2, 2), (5, 6, 2, 2), (5, 6, 2, 3), (6, 6, 2, 2), (6, 6, 3, 3), (6, 7, 2, 3), (7, 7, 3, 3)];

/// 3x3 block around `v` inside a four-vertex ring. Returns the drawing,
/// `[v, w, n, e, s]` (the centre and mid-sides) and the ring in order.
fn small_block(with_nw_corner: bool, subdivide: &[usize]) -> (Drawing, [Vertex; 5], Vec<Vertex>) {
    let mut d = Drawing::default();
    let v = d.at(0.0, 0.0);
    let w = d.at(-1.0, 0.0);
    let n = d.at(0.0, 1.0);
    let e = d.at(1.0, 0.0);
    let s = d.at(0.0, -1.0);
    for m in [w, n, e, s] {
        d.edge(v, m);
    }
    let ne = d.at(1.0, 1.0);
    let se = d.at(1.0, -1.0);
    let sw = d.at(-1.0, -1.0);
    d.path(&[n, ne, e, se, s, sw, w]);
    if with_nw_corner {
        let nw = d.at(-1.0, 1.0);
        d.path(&[w, nw, n]);
    } else {
        d.edge(w, n);
    }
    let ring_pts = [(-3.0, 0.0), (0.0, 3.0), (3.0, 0.0), (0.0, -3.0)];
    let corners: Vec<Vertex> = ring_pts.iter().map(|&(x, y)| d.at(x, y)).collect();
    for (&m, &r) in [w, n, e, s].iter().zip(&corners) {
        d.edge(m, r);
    }
    let mut ring = Vec::new();
    for i in 0..4 {
        ring.push(corners[i]);
        if subdivide.contains(&i) {
            let (x0, y0) = ring_pts[i];
            let (x1, y1) = ring_pts[(i + 1) % 4];
            ring.push(d.at((x0 + x1) / 2.0, (y0 + y1) / 2.0));
        }
    }
    d.cycle(&ring);
    (d, [v, w, n, e, s], ring)
}

/// Grid drawing with vertex `(r, c)` at `(c, -r)`, optionally without one
/// vertex. Returns the drawing, an id lookup and the perimeter walk.
fn grid_drawing(
    rows: usize,
    cols: usize,
    skip: Option<(usize, usize)>,
) -> (Drawing, Vec<Vec<Option<Vertex>>>, Vec<Vertex>) {
    let mut d = Drawing::default();
    let mut id = vec![vec![None; cols]; rows];
    for (r, row) in id.iter_mut().enumerate() {
        for (c, slot) in row.iter_mut().enumerate() {
            if skip != Some((r, c)) {
                *slot = Some(d.at(c as f64, -(r as f64)));
            }
        }
    }
    for r in 0..rows {
        for c in 0..cols {
            if let Some(a) = id[r][c] {
                if let Some(Some(b)) = id[r].get(c + 1) {
                    d.edge(a, *b);
                }
                if let Some(Some(b)) = id.get(r + 1).map(|row| row[c]) {
                    d.edge(a, b);
                }
            }
        }
    }
    let mut perim: Vec<(usize, usize)> = (0..cols).map(|c| (0, c)).collect();
    perim.extend((1..rows).map(|r| (r, cols - 1)));
    perim.extend((0..cols - 1).rev().map(|c| (rows - 1, c)));
    perim.extend((1..rows - 1).rev().map(|r| (r, 0)));
    let perim = perim.into_iter().map(|(r, c)| id[r][c].expect("perimeter kept")).collect();
    (d, id, perim)
}

fn config_at(kind: ConfigKind, v: Vertex, [w, n, e, s]: [Vertex; 4], face: Option<FaceId>) -> Config {
    Config { kind, v, nbrs: [w, n, e, s], face }
}

/// Configuration I gadgets: `v` with opposite 4-neighbours `v1`, `v3`.
///
/// Variants 0-2 are a 3x3 block inside a (possibly subdivided) ring; they
/// contain short separating cycles. Variants 3-9 sit in plain grids with
/// the perimeter as `D` and have none.
pub fn config_i_gadget(variant: u64) -> ConfigGadget {
    match variant % CONFIG_GADGET_VARIANTS {
        k @ 0..=2 => {
            let sub: &[usize] = [&[][..], &[0][..], &[0, 2][..]][k as usize];
            let (d, [v, w, n, e, s], ring) = small_block(true, sub);
            let plane = d.plane(&ring);
            ConfigGadget {
                name: format!("block-i-{k}"),
                plane,
                config: config_at(ConfigKind::ConfigI, v, [w, n, e, s], None),
            }
        }
        k => {
            let (rows, cols, r, c) = GRID_VARIANTS[k as usize - 3];
            let (d, id, perim) = grid_drawing(rows, cols, None);
            let at = |r: usize, c: usize| id[r][c].unwrap();
            let plane = d.plane(&perim);
            let config = config_at(
                ConfigKind::ConfigI,
                at(r, c),
                [at(r, c - 1), at(r - 1, c), at(r, c + 1), at(r + 1, c)],
                None,
            );
            ConfigGadget { name: format!("grid-i-{rows}x{cols}-{r}-{c}"), plane, config }
        }
    }
}

/// Configuration II gadgets: the only 3-face at `v` is `[v v1 v2]` with
/// `d(v1) = 4`. Built from the configuration I gadgets by removing the
/// corner between `v1` and `v2` and joining them.
pub fn config_ii_gadget(variant: u64) -> ConfigGadget {
    match variant % CONFIG_GADGET_VARIANTS {
        k @ 0..=2 => {
            let sub: &[usize] = [&[][..], &[0][..], &[1, 3][..]][k as usize];
            let (d, [v, w, n, e, s], ring) = small_block(false, sub);
            let plane = d.plane(&ring);
            let face = face_with(&plane, &[v, w, n]);
            ConfigGadget {
                name: format!("block-ii-{k}"),
                plane,
                config: config_at(ConfigKind::ConfigII, v, [w, n, e, s], Some(face)),
            }
        }
        k => {
            let (rows, cols, r, c) = GRID_VARIANTS[k as usize - 3];
            let (mut d, id, perim) = grid_drawing(rows, cols, Some((r - 1, c - 1)));
            let at = |r: usize, c: usize| id[r][c].unwrap();
            d.edge(at(r, c - 1), at(r - 1, c));
            let plane = d.plane(&perim);
            let (v, w, n) = (at(r, c), at(r, c - 1), at(r - 1, c));
            let face = face_with(&plane, &[v, w, n]);
            let config = config_at(ConfigKind::ConfigII, v, [w, n, at(r, c + 1), at(r + 1, c)], Some(face));
            ConfigGadget { name: format!("grid-ii-{rows}x{cols}-{r}-{c}"), plane, config }
        }
    }
}

/// A configuration I whose `v2` and `v4` are adjacent, so identifying them
/// would create a loop.
pub fn config_i_with_chord() -> (Plane, Config) {
    let mut d = Drawing::default();
    let v = d.at(0.0, 0.0);
    let v1 = d.at(-0.5, 0.0);
    let v2 = d.at(-1.0, 2.0);
    let v3 = d.at(1.0, 0.0);
    let v4 = d.at(-1.0, -2.0);
    let x = d.at(-0.8, 0.0);
    let y = d.at(2.0, 0.0);
    for u in [v1, v2, v3, v4] {
        d.edge(v, u);
    }
    d.path(&[v2, v1, v4]);
    d.edge(v1, x);
    d.edge(v2, v4);
    d.path(&[v2, v3, v4]);
    d.edge(v3, y);
    let ring: Vec<Vertex> =
        [(5.0, 0.0), (5.0, -5.0), (-5.0, -5.0), (-5.0, 5.0), (5.0, 5.0)].iter().map(|&(a, b)| d.at(a, b)).collect();
    d.cycle(&ring);
    d.edge(y, ring[0]);
    let plane = d.plane(&ring);
    (plane, Config { kind: ConfigKind::ConfigI, v, nbrs: [v1, v2, v3, v4], face: None })
}

/// A configuration I whose `v2` and `v4` share the neighbour `x`, so
/// identifying them would create a parallel edge. Returns `x` as well.
pub fn config_i_with_shared_neighbor() -> (Plane, Config, Vertex) {
    let mut d = Drawing::default();
    let v = d.at(0.0, 0.0);
    let w = d.at(-1.0, 0.0);
    let n = d.at(0.0, 1.0);
    let e = d.at(1.0, 0.0);
    let s = d.at(0.0, -1.0);
    let x = d.at(-3.0, 0.0);
    let y = d.at(3.0, 0.0);
    for u in [w, n, e, s] {
        d.edge(v, u);
    }
    d.cycle(&[w, n, e, s]);
    d.path(&[n, x, s]);
    d.edge(w, x);
    d.edge(e, y);
    let ring: Vec<Vertex> =
        [(-6.0, 0.0), (0.0, 6.0), (6.0, 0.0), (0.0, -6.0)].iter().map(|&(a, b)| d.at(a, b)).collect();
    d.cycle(&ring);
    d.edge(x, ring[0]);
    d.edge(y, ring[2]);
    let plane = d.plane(&ring);
    (plane, Config { kind: ConfigKind::ConfigI, v, nbrs: [w, n, e, s], face: None }, x)
}

#[derive(Debug, Clone)]
pub struct SinkGadget {
    pub plane: Plane,
    pub sink: FaceId,
    pub sources: Vec<Vertex>,
}

/// Pentagon `p0..p4` with apexes `s0..s{apexes-1}` on its edges, inside a
/// 30-vertex ring `D`. The fifth apex, when present, is a ring vertex; the
/// others have degree 5 and touch the ring on non-consecutive vertices.
fn sink_drawing(apexes: usize) -> (Plane, Vec<Vertex>, Vec<Vertex>) {
    let mut d = Drawing::default();
    let p: Vec<Vertex> = (0..5).map(|i| d.polar(1.0, 90.0 - 72.0 * i as f64)).collect();
    d.cycle(&p);
    let ring: Vec<Vertex> = (0..30).map(|j| d.polar(4.0, 6.0 + 12.0 * j as f64)).collect();
    d.cycle(&ring);
    let mut sources = Vec::new();
    for i in 0..apexes.min(4) {
        let theta = (54.0 - 72.0 * i as f64).rem_euclid(360.0);
        let s = d.polar(2.0, theta);
        d.edge(s, p[i]);
        d.edge(s, p[i + 1]);
        let j = ((theta - 6.0) / 12.0).round() as usize;
        for dj in [28, 0, 2] {
            d.edge(s, ring[(j + dj) % 30]);
        }
        sources.push(s);
    }
    if apexes == 5 {
        let s4 = ring[10];
        d.edge(s4, p[4]);
        d.edge(s4, p[0]);
        sources.push(s4);
    }
    (d.plane(&ring), p, sources)
}

pub fn sink_gadget() -> SinkGadget {
    let (plane, p, sources) = sink_drawing(5);
    let sink = face_with(&plane, &p);
    SinkGadget { plane, sink, sources }
}

/// The sink construction with only `apexes < 5` of the pentagon's edges on
/// 3-faces.
pub fn partial_sink_gadget(apexes: usize) -> Plane {
    sink_drawing(apexes.min(4)).0
}

#[derive(Debug, Clone)]
pub struct FaceFixture {
    pub plane: Plane,
    pub face: FaceId,
}

/// A special 3-face `[a b c]`: `a` is a 4-vertex on one triangle with no
/// neighbour on `D`, `b` and `c` are 5-vertices.
pub fn special_face_fixture() -> FaceFixture {
    let mut d = Drawing::default();
    let a = d.at(0.0, 0.0);
    let b = d.at(-1.0, 1.0);
    let c = d.at(1.0, 1.0);
    let l = d.at(-1.0, -1.0);
    let r = d.at(1.0, -1.0);
    let q = d.at(-3.0, 2.0);
    let q2 = d.at(3.0, 2.0);
    let ring: Vec<Vertex> = [
        (-4.0, 4.0),
        (-1.0, 4.0),
        (1.0, 4.0),
        (4.0, 4.0),
        (4.0, 0.0),
        (4.0, -4.0),
        (0.0, -4.0),
        (-4.0, -4.0),
        (-4.0, 0.0),
    ]
    .iter()
    .map(|&(x, y)| d.at(x, y))
    .collect();
    let [nw, n1, n2, ne, e, _se, s, _sw, w] = ring[..] else { unreachable!() };
    d.cycle(&ring);
    for u in [b, c, l, r] {
        d.edge(a, u);
    }
    d.edge(b, c);
    d.path(&[n1, b, q, nw]);
    d.edge(b, w);
    d.path(&[n2, c, q2, ne]);
    d.edge(c, e);
    d.path(&[w, l, s]);
    d.path(&[e, r, s]);
    let plane = d.plane(&ring);
    let face = face_with(&plane, &[a, b, c]);
    FaceFixture { plane, face }
}

/// A local configuration with the exact final charge of one element.
#[derive(Debug, Clone)]
pub struct ChargeFixture {
    pub name: &'static str,
    pub plane: Plane,
    pub element: Element,
    pub expected: Charge,
}

/// The pinned local configurations, one per case of the nonnegativity check.
pub fn charge_fixtures() -> Vec<ChargeFixture> {
    let mut out = Vec::new();

    // 5x5 grid: centre 4-vertex and an internal 4-face
    {
        let (d, id, perim) = grid_drawing(5, 5, None);
        let at = |r: usize, c: usize| id[r][c].unwrap();
        let plane = d.plane(&perim);
        let face = face_with(&plane, &[at(1, 1), at(1, 2), at(2, 2), at(2, 1)]);
        out.push(ChargeFixture {
            name: "four-vertex-no-outer-neighbor",
            plane: plane.clone(),
            element: Element::Vertex(at(2, 2)),
            expected: Charge::int(0),
        });
        out.push(ChargeFixture {
            name: "internal-four-face",
            plane,
            element: Element::Face(face),
            expected: Charge::int(0),
        });
    }

    // 4-vertex on two 3-faces, two pentagons
    {
        let mut d = Drawing::default();
        let v = d.at(0.0, 0.0);
        let e = d.at(2.0, 0.0);
        let n = d.at(0.0, 2.0);
        let w = d.at(-2.0, 0.0);
        let s = d.at(0.0, -2.0);
        let p = d.at(-1.0, 2.0);
        let q = d.at(-2.0, 1.0);
        let r = d.at(1.0, -2.0);
        let t = d.at(2.0, -1.0);
        for u in [e, n, w, s] {
            d.edge(v, u);
        }
        d.edge(e, n);
        d.edge(w, s);
        d.path(&[n, p, q, w]);
        d.path(&[s, r, t, e]);
        let plane = d.plane(&[n, p, q, w, s, r, t, e]);
        let tri = face_with(&plane, &[v, n, e]);
        out.push(ChargeFixture {
            name: "four-vertex-two-triangles",
            plane: plane.clone(),
            element: Element::Vertex(v),
            expected: Charge::int(0),
        });
        out.push(ChargeFixture {
            name: "outer-triangle-one-inner-vertex",
            plane,
            element: Element::Face(tri),
            expected: Charge::int(0),
        });
    }

    // 5-vertex on two 3-faces with neighbours on D
    {
        let mut d = Drawing::default();
        let v = d.at(0.0, 0.0);
        let u: Vec<Vertex> = (0..5).map(|i| d.polar(1.0, 90.0 - 72.0 * i as f64)).collect();
        for &x in &u {
            d.edge(v, x);
        }
        let x = d.polar(2.0, -18.0);
        let y = d.polar(2.0, -162.0);
        let z = d.polar(2.0, 126.0);
        d.edge(u[0], u[1]);
        d.edge(u[2], u[3]);
        d.path(&[u[1], x, u[2]]);
        d.path(&[u[3], y, u[4]]);
        d.path(&[u[4], z, u[0]]);
        let plane = d.plane(&[u[0], u[1], x, u[2], u[3], y, u[4], z]);
        out.push(ChargeFixture {
            name: "five-vertex-two-triangles-near-outer",
            plane,
            element: Element::Vertex(v),
            expected: Charge::int(0),
        });
    }

    // 6-vertex alternating 3-faces and 4-faces
    {
        let mut d = Drawing::default();
        let v = d.at(0.0, 0.0);
        let u: Vec<Vertex> = (0..6).map(|i| d.polar(1.0, 90.0 - 60.0 * i as f64)).collect();
        for &x in &u {
            d.edge(v, x);
        }
        let xs: Vec<Vertex> = [0.0, -120.0, 120.0].iter().map(|&a| d.polar(2.0, a)).collect();
        for j in 0..3 {
            d.edge(u[2 * j], u[2 * j + 1]);
            d.path(&[u[2 * j + 1], xs[j], u[(2 * j + 2) % 6]]);
        }
        let plane = d.plane(&[u[0], u[1], xs[0], u[2], u[3], xs[1], u[4], u[5], xs[2]]);
        out.push(ChargeFixture { name: "six-vertex", plane, element: Element::Vertex(v), expected: Charge::new(3, 4) });
    }

    let special = special_face_fixture();
    out.push(ChargeFixture {
        name: "special-triangle",
        plane: special.plane,
        element: Element::Face(special.face),
        expected: Charge::int(0),
    });

    // 4-face meeting D in one vertex
    {
        let mut d = Drawing::default();
        let v1 = d.at(0.0, 0.0);
        let v2 = d.at(1.0, 1.0);
        let v3 = d.at(0.0, 2.0);
        let v4 = d.at(-1.0, 1.0);
        let x = d.at(1.0, 3.0);
        let p = d.at(2.0, 2.0);
        let q = d.at(3.0, 1.0);
        let w = d.at(2.0, -1.0);
        let t1 = d.at(3.0, 4.0);
        let t2 = d.at(-2.0, 4.0);
        let t3 = d.at(-2.0, 0.0);
        d.cycle(&[v1, v2, v3, v4]);
        d.path(&[v2, p, q, v2]);
        d.path(&[v3, x, p]);
        d.cycle(&[v1, w, q, t1, t2, t3]);
        d.edge(v4, t3);
        let plane = d.plane(&[v1, w, q, t1, t2, t3]);
        let face = face_with(&plane, &[v1, v2, v3, v4]);
        out.push(ChargeFixture {
            name: "four-face-one-outer-vertex",
            plane,
            element: Element::Face(face),
            expected: Charge::int(0),
        });
    }

    // 5-face meeting D
    {
        let mut d = Drawing::default();
        let a: Vec<Vertex> = (0..5).map(|i| d.polar(2.0, 90.0 - 72.0 * i as f64)).collect();
        d.cycle(&a);
        let x = d.at(0.0, 0.0);
        d.path(&[a[0], x, a[2]]);
        let plane = d.plane(&a);
        let face = face_with(&plane, &[a[2], a[3], a[4], a[0], x]);
        out.push(ChargeFixture {
            name: "five-face-meeting-outer",
            plane,
            element: Element::Face(face),
            expected: Charge::new(3, 4),
        });
    }

    let sink = sink_gadget();
    out.push(ChargeFixture {
        name: "sink",
        plane: sink.plane,
        element: Element::Face(sink.sink),
        expected: Charge::int(0),
    });

    out
}
