//! The planar section `{x₃ = 0} ∩ span(A)` of a three-row span.
//!
//! Membership in a tropical span depends only on which coordinate attains
//! each residuation minimum. For generator `g` (normalised so its last
//! coordinate is 0) those comparisons change across the lines `x = g_x`,
//! `y = g_y` and `y − x = g_y − g_x`. The section is therefore a union of
//! closed faces of the arrangement of these lines; we build the
//! arrangement exactly and keep the faces whose relative interior lies in
//! the span.

use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::TropMatrix;
use crate::scalar::Scalar;
use crate::span::span_member;

#[derive(Clone, Debug, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn origin() -> Self {
        Self::new(T::zero(), T::zero())
    }

    fn lerp(&self, other: &Self, t: &T) -> Self {
        Self::new(
            self.x.clone() + (other.x.clone() - self.x.clone()) * t.clone(),
            self.y.clone() + (other.y.clone() - self.y.clone()) * t.clone(),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Line {
    /// `x = c`
    Vertical,
    /// `y = c`
    Horizontal,
    /// `y − x = c`
    Diagonal,
}

/// A cell of the section: a maximal 2-dimensional piece (connected through
/// shared edges), a maximal unbranched 1-dimensional chain, or an isolated point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub dim: usize,
    /// Face indices (2-cells only).
    pub faces: Vec<usize>,
    /// Edge indices.
    pub edges: Vec<usize>,
    /// Vertex indices.
    pub vertices: Vec<usize>,
}

/// Polygonal complex of `{x₃ = 0} ∩ span(A)`, with exact coordinates.
#[derive(Clone, Debug)]
pub struct SpanSection<T> {
    /// Columns of `A₀` without their last (zero) coordinate.
    pub generators: Vec<Point<T>>,
    pub vertices: Vec<Point<T>>,
    /// Segments as vertex index pairs.
    pub edges: Vec<(usize, usize)>,
    /// Bounded 2-faces as counter-clockwise vertex cycles.
    pub faces: Vec<Vec<usize>>,
    pub cells: Vec<Cell>,
}

fn position<T: PartialEq>(list: &mut Vec<T>, item: T) -> usize {
    match list.iter().position(|p| *p == item) {
        Some(i) => i,
        None => {
            list.push(item);
            list.len() - 1
        }
    }
}

fn intersect<T: Scalar>(a: (Line, &T), b: (Line, &T)) -> Option<Point<T>> {
    use Line::*;
    let (c, d) = (a.1.clone(), b.1.clone());
    match (a.0, b.0) {
        (Vertical, Horizontal) => Some(Point::new(c, d)),
        (Horizontal, Vertical) => Some(Point::new(d, c)),
        (Vertical, Diagonal) => Some(Point::new(c.clone(), c + d)),
        (Diagonal, Vertical) => Some(Point::new(d.clone(), d + c)),
        (Horizontal, Diagonal) => Some(Point::new(c.clone() - d, c)),
        (Diagonal, Horizontal) => Some(Point::new(d.clone() - c, d)),
        _ => None,
    }
}

fn on_line<T: Scalar>(p: &Point<T>, line: Line, c: &T) -> bool {
    match line {
        Line::Vertical => p.x == *c,
        Line::Horizontal => p.y == *c,
        Line::Diagonal => p.y.clone() - p.x.clone() == *c,
    }
}

/// Counter-clockwise rank of the direction from `u` to `v` (multiples of 45°).
fn direction<T: Scalar>(u: &Point<T>, v: &Point<T>) -> usize {
    use std::cmp::Ordering::*;
    let dx = v.x.partial_cmp(&u.x).unwrap_or(Equal);
    let dy = v.y.partial_cmp(&u.y).unwrap_or(Equal);
    match (dx, dy) {
        (Greater, Equal) => 0,
        (Greater, Greater) => 1,
        (Equal, Greater) => 2,
        (Less, Equal) => 3,
        (Less, Less) => 4,
        (Equal, Less) => 5,
        // Arrangement edges only run along the three line directions.
        _ => unreachable!("edge direction outside the arrangement"),
    }
}

fn twice_signed_area<T: Scalar>(cycle: &[usize], pts: &[Point<T>]) -> T {
    let mut acc = T::zero();
    for k in 0..cycle.len() {
        let p = &pts[cycle[k]];
        let q = &pts[cycle[(k + 1) % cycle.len()]];
        acc = acc + p.x.clone() * q.y.clone() - q.x.clone() * p.y.clone();
    }
    acc
}

fn centroid<T: Scalar>(ids: &[usize], pts: &[Point<T>]) -> Point<T> {
    let count = T::from_usize(ids.len()).expect("small count");
    let (sx, sy) = ids.iter().fold((T::zero(), T::zero()), |(sx, sy), &i| {
        (sx + pts[i].x.clone(), sy + pts[i].y.clone())
    });
    Point::new(sx / count.clone(), sy / count)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }

    fn groups(&mut self, members: &[usize]) -> Vec<Vec<usize>> {
        let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &m in members {
            let r = self.find(m);
            map.entry(r).or_default().push(m);
        }
        let mut out: Vec<Vec<usize>> = map.into_values().collect();
        out.sort();
        out
    }
}

/// Planar complex of `{x₃ = 0} ∩ span(A)` for a real matrix with three rows.
pub fn section_complex<T: Scalar>(a: &TropMatrix<T>) -> Result<SpanSection<T>> {
    if a.rows() != 3 {
        return Err(Error::Precondition(format!("sections need 3 rows, got {}", a.rows())));
    }
    if a.cols() == 0 {
        return Err(Error::Precondition("no generators".into()));
    }
    a.ensure_real()?;
    let a0 = a.normalize_a0()?;
    let generators: Vec<Point<T>> =
        (0..a0.cols()).map(|j| Point::new(a0.real(0, j).clone(), a0.real(1, j).clone())).collect();

    let mut lines: Vec<(Line, T)> = Vec::new();
    for g in &generators {
        position(&mut lines, (Line::Vertical, g.x.clone()));
        position(&mut lines, (Line::Horizontal, g.y.clone()));
        position(&mut lines, (Line::Diagonal, g.y.clone() - g.x.clone()));
    }

    let mut pts: Vec<Point<T>> = Vec::new();
    for (i, (l1, c1)) in lines.iter().enumerate() {
        for (l2, c2) in &lines[i + 1..] {
            if let Some(p) = intersect((*l1, c1), (*l2, c2)) {
                position(&mut pts, p);
            }
        }
    }

    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (line, c) in &lines {
        let mut on: Vec<usize> = (0..pts.len()).filter(|&i| on_line(&pts[i], *line, c)).collect();
        let key = |p: &Point<T>| if *line == Line::Vertical { p.y.clone() } else { p.x.clone() };
        on.sort_by(|&i, &j| key(&pts[i]).partial_cmp(&key(&pts[j])).expect("ordered scalars"));
        for w in on.windows(2) {
            edges.push((w[0], w[1]));
        }
    }

    // Half-edge traversal for the bounded faces.
    let mut around: Vec<Vec<(usize, usize)>> = vec![Vec::new(); pts.len()];
    for &(u, v) in &edges {
        around[u].push((direction(&pts[u], &pts[v]), v));
        around[v].push((direction(&pts[v], &pts[u]), u));
    }
    for list in &mut around {
        list.sort();
    }
    let mut used = std::collections::HashSet::new();
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for &(u0, v0) in &edges {
        for start in [(u0, v0), (v0, u0)] {
            if used.contains(&start) {
                continue;
            }
            let mut cycle = Vec::new();
            let (mut u, mut v) = start;
            loop {
                used.insert((u, v));
                cycle.push(u);
                let list = &around[v];
                let back = list.iter().position(|&(_, w)| w == u).expect("twin half-edge");
                let next = list[(back + list.len() - 1) % list.len()].1;
                u = v;
                v = next;
                if (u, v) == start {
                    break;
                }
            }
            if twice_signed_area(&cycle, &pts) > T::zero() {
                faces.push(cycle);
            }
        }
    }

    let gens = a0.clone();
    let inside = |p: &Point<T>| -> bool {
        span_member(&gens, &[p.x.clone(), p.y.clone(), T::zero()]).map(|m| m.member).unwrap_or(false)
    };

    let keep_pt: Vec<bool> = pts.iter().map(&inside).collect();
    let keep_edge: Vec<bool> = edges
        .iter()
        .map(|&(u, v)| keep_pt[u] && keep_pt[v] && inside(&pts[u].lerp(&pts[v], &T::one().half())))
        .collect();
    let keep_face: Vec<bool> = faces.iter().map(|f| inside(&centroid(f, &pts))).collect();

    // Reindex the kept parts.
    let mut remap = vec![usize::MAX; pts.len()];
    let mut vertices = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        if keep_pt[i] {
            remap[i] = vertices.len();
            vertices.push(p.clone());
        }
    }
    let kept_edges: Vec<(usize, usize)> = edges
        .iter()
        .zip(&keep_edge)
        .filter(|(_, k)| **k)
        .map(|(&(u, v), _)| (remap[u], remap[v]))
        .collect();
    let kept_faces: Vec<Vec<usize>> = faces
        .iter()
        .zip(&keep_face)
        .filter(|(_, k)| **k)
        .map(|(f, _)| f.iter().map(|&i| remap[i]).collect())
        .collect();

    let cells = build_cells(vertices.len(), &kept_edges, &kept_faces);
    Ok(SpanSection { generators, vertices, edges: kept_edges, faces: kept_faces, cells })
}

fn face_edges(face: &[usize], edges: &[(usize, usize)]) -> Vec<usize> {
    (0..face.len())
        .filter_map(|k| {
            let (a, b) = (face[k], face[(k + 1) % face.len()]);
            edges.iter().position(|&(u, v)| (u, v) == (a, b) || (u, v) == (b, a))
        })
        .collect()
}

fn build_cells(nverts: usize, edges: &[(usize, usize)], faces: &[Vec<usize>]) -> Vec<Cell> {
    let mut cells = Vec::new();
    let face_edge_ids: Vec<Vec<usize>> = faces.iter().map(|f| face_edges(f, edges)).collect();
    let mut on_face_edge = vec![false; edges.len()];
    let mut on_face_vertex = vec![false; nverts];
    for (f, ids) in faces.iter().zip(&face_edge_ids) {
        for &e in ids {
            on_face_edge[e] = true;
        }
        for &v in f {
            on_face_vertex[v] = true;
        }
    }

    // 2-cells: faces glued along shared edges.
    let mut uf = UnionFind::new(faces.len());
    for f in 0..faces.len() {
        for g in f + 1..faces.len() {
            if face_edge_ids[f].iter().any(|e| face_edge_ids[g].contains(e)) {
                uf.union(f, g);
            }
        }
    }
    for group in uf.groups(&(0..faces.len()).collect::<Vec<_>>()) {
        let mut es: Vec<usize> = group.iter().flat_map(|&f| face_edge_ids[f].clone()).collect();
        es.sort_unstable();
        es.dedup();
        let mut vs: Vec<usize> = group.iter().flat_map(|&f| faces[f].clone()).collect();
        vs.sort_unstable();
        vs.dedup();
        cells.push(Cell { dim: 2, faces: group, edges: es, vertices: vs });
    }

    // 1-cells: chains of free edges, broken at branch points and where they meet a 2-cell.
    let free: Vec<usize> = (0..edges.len()).filter(|&e| !on_face_edge[e]).collect();
    let mut degree = vec![0usize; nverts];
    for &e in &free {
        degree[edges[e].0] += 1;
        degree[edges[e].1] += 1;
    }
    let mut uf = UnionFind::new(edges.len());
    for (k, &e) in free.iter().enumerate() {
        for &g in &free[k + 1..] {
            let (a, b) = edges[e];
            let shared = [edges[g].0, edges[g].1].into_iter().find(|&v| v == a || v == b);
            if let Some(v) = shared {
                if degree[v] == 2 && !on_face_vertex[v] {
                    uf.union(e, g);
                }
            }
        }
    }
    for group in uf.groups(&free) {
        let mut vs: Vec<usize> = group.iter().flat_map(|&e| [edges[e].0, edges[e].1]).collect();
        vs.sort_unstable();
        vs.dedup();
        cells.push(Cell { dim: 1, faces: Vec::new(), edges: group, vertices: vs });
    }

    // 0-cells: points touched by nothing else.
    let mut touched = on_face_vertex;
    for &(u, v) in edges {
        touched[u] = true;
        touched[v] = true;
    }
    for (v, t) in touched.iter().enumerate() {
        if !t {
            cells.push(Cell { dim: 0, faces: Vec::new(), edges: Vec::new(), vertices: vec![v] });
        }
    }
    cells
}

impl<T: Scalar> SpanSection<T> {
    pub fn cell_count(&self, dim: usize) -> usize {
        self.cells.iter().filter(|c| c.dim == dim).count()
    }

    /// Dimension of the section (0, 1 or 2).
    pub fn dimension(&self) -> usize {
        self.cells.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    /// `(min, max)` corners over vertices, generators and the origin.
    pub fn bounding_box(&self) -> (Point<T>, Point<T>) {
        let mut lo = Point::origin();
        let mut hi = Point::origin();
        for p in self.vertices.iter().chain(&self.generators) {
            if p.x < lo.x {
                lo.x = p.x.clone();
            }
            if p.y < lo.y {
                lo.y = p.y.clone();
            }
            if p.x > hi.x {
                hi.x = p.x.clone();
            }
            if p.y > hi.y {
                hi.y = p.y.clone();
            }
        }
        (lo, hi)
    }

    fn generator_matrix(&self) -> TropMatrix<T> {
        let mut m = TropMatrix::zero(3);
        let m_cols = self.generators.len();
        let mut entries = Vec::with_capacity(3 * m_cols);
        for row in 0..3 {
            for g in &self.generators {
                let v = match row {
                    0 => g.x.clone(),
                    1 => g.y.clone(),
                    _ => T::zero(),
                };
                entries.push(crate::ext::Finite(v));
            }
        }
        if let Ok(g) = TropMatrix::new(3, m_cols, entries) {
            m = g;
        }
        m
    }

    /// Membership of a planar point, decided by residuation against the generators.
    pub fn contains(&self, p: &Point<T>) -> bool {
        span_member(&self.generator_matrix(), &[p.x.clone(), p.y.clone(), T::zero()])
            .map(|m| m.member)
            .unwrap_or(false)
    }

    /// Convex hull of the section.
    pub fn convex_hull(&self) -> Vec<Point<T>> {
        convex_hull(&self.vertices)
    }

    /// Alcoved hull of the section; see [`alcoved_hull`].
    pub fn alcoved_hull(&self) -> Vec<Point<T>> {
        alcoved_hull(&self.vertices)
    }

    /// Every vertex is reachable from every other along section edges.
    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut uf = UnionFind::new(self.vertices.len());
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        let root = uf.find(0);
        (0..self.vertices.len()).all(|v| uf.find(v) == root)
    }

    /// A random point of the section: a vertex, a point on an edge, or a
    /// convex combination of a face's vertices, with weights on a 1/64 grid.
    pub fn sample_point<R: Rng>(&self, rng: &mut R) -> Point<T> {
        let total = self.vertices.len() + self.edges.len() + self.faces.len();
        let pick = rng.gen_range(0..total);
        if pick < self.vertices.len() {
            return self.vertices[pick].clone();
        }
        let pick = pick - self.vertices.len();
        if pick < self.edges.len() {
            let (u, v) = self.edges[pick];
            let t = T::from_ratio(rng.gen_range(0..=64), 64);
            return self.vertices[u].lerp(&self.vertices[v], &t);
        }
        let face = &self.faces[pick - self.edges.len()];
        let weights: Vec<i64> = face.iter().map(|_| rng.gen_range(0..=64)).collect();
        let sum: i64 = weights.iter().sum::<i64>().max(1);
        let mut x = T::zero();
        let mut y = T::zero();
        for (&v, &w) in face.iter().zip(&weights) {
            let t = T::from_ratio(w, sum);
            x = x + self.vertices[v].x.clone() * t.clone();
            y = y + self.vertices[v].y.clone() * t;
        }
        if weights.iter().all(|&w| w == 0) {
            return self.vertices[face[0]].clone();
        }
        Point::new(x, y)
    }
}

/// Classical convex hull, counter-clockwise from the lowest-leftmost point,
/// without collinear points.
pub fn convex_hull<T: Scalar>(points: &[Point<T>]) -> Vec<Point<T>> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| (&a.x, &a.y).partial_cmp(&(&b.x, &b.y)).expect("ordered scalars"));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: &Point<T>, a: &Point<T>, b: &Point<T>| {
        (a.x.clone() - o.x.clone()) * (b.y.clone() - o.y.clone())
            - (a.y.clone() - o.y.clone()) * (b.x.clone() - o.x.clone())
    };
    let mut hull: Vec<Point<T>> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point<T>>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for p in iter {
            while hull.len() >= start + 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= T::zero() {
                hull.pop();
            }
            hull.push(p.clone());
        }
        hull.pop();
    }
    // Start from the lowest point, leftmost among ties.
    let first = (0..hull.len())
        .min_by(|&i, &j| (&hull[i].y, &hull[i].x).partial_cmp(&(&hull[j].y, &hull[j].x)).expect("ordered"))
        .unwrap_or(0);
    hull.rotate_left(first);
    hull
}

/// Smallest polygon of the form `a ≤ x ≤ b`, `c ≤ y ≤ d`, `e ≤ y − x ≤ f`
/// containing the points (the planar alcoved hull), as a counter-clockwise
/// vertex list in the order of [`convex_hull`].
pub fn alcoved_hull<T: Scalar>(points: &[Point<T>]) -> Vec<Point<T>> {
    if points.is_empty() {
        return Vec::new();
    }
    let pick = |f: &dyn Fn(&Point<T>) -> T, max: bool| {
        points.iter().map(f).reduce(|u, v| if (v > u) == max { v } else { u }).expect("nonempty")
    };
    let gx = |p: &Point<T>| p.x.clone();
    let gy = |p: &Point<T>| p.y.clone();
    let gd = |p: &Point<T>| p.y.clone() - p.x.clone();
    let bounds = [
        (Line::Vertical, pick(&gx, false)),
        (Line::Vertical, pick(&gx, true)),
        (Line::Horizontal, pick(&gy, false)),
        (Line::Horizontal, pick(&gy, true)),
        (Line::Diagonal, pick(&gd, false)),
        (Line::Diagonal, pick(&gd, true)),
    ];
    let inside = |p: &Point<T>| {
        p.x >= bounds[0].1 && p.x <= bounds[1].1 && p.y >= bounds[2].1 && p.y <= bounds[3].1 && {
            let d = gd(p);
            d >= bounds[4].1 && d <= bounds[5].1
        }
    };
    let mut corners = points.to_vec();
    for (i, (l1, c1)) in bounds.iter().enumerate() {
        for (l2, c2) in &bounds[i + 1..] {
            if let Some(p) = intersect((*l1, c1), (*l2, c2)) {
                if inside(&p) {
                    corners.push(p);
                }
            }
        }
    }
    convex_hull(&corners)
}

/// Whether column `j` of `A₀` lies in the closed sector `S_j` of the tropical line at the origin.
pub fn sector_check<T: Scalar>(a: &TropMatrix<T>) -> Result<bool> {
    if a.rows() != 3 || a.cols() != 3 {
        return Err(Error::Precondition("sector check needs a 3x3 matrix".into()));
    }
    let a0 = a.normalize_a0()?;
    let z = T::zero();
    let col = |j: usize| (a0.real(0, j).clone(), a0.real(1, j).clone());
    let (x1, y1) = col(0);
    let (x2, y2) = col(1);
    let (x3, y3) = col(2);
    Ok(x1 >= z && x1 >= y1 && x2 <= y2 && y2 >= z && x3 <= z && y3 <= z)
}
