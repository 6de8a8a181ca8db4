//! Constructors for the catalogue of finite dg-categories.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::exactlinalg::sparse::{collect, SVec};
use crate::exactlinalg::{Echelon, Field, Scalar};

use super::bimodule::Bimod;
use super::category::{CategoryBuilder, DGCategory};
use super::DgError;

/// The field `k` as a one-object category.
pub fn point(field: Field) -> DGCategory {
    truncated_polynomial(field, 0, 0).with_name("k")
}

/// `k[t]/t^{n+1}` with `deg t = deg_t`, zero differential.
pub fn truncated_polynomial(field: Field, n: usize, deg_t: i64) -> DGCategory {
    let mut b = CategoryBuilder::new(field, &format!("k[t]/t^{}", n + 1), vec!["*".to_string()]);
    for k in 0..=n {
        let name = match k {
            0 => "1".to_string(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        b.add_basis(0, 0, name, k as i64 * deg_t);
    }
    for i in 0..=n {
        for j in 0..=n {
            if i + j <= n {
                b.set_comp(0, 0, 0, j, i, vec![(i + j, field.one())]);
            }
        }
    }
    b.set_unit(0, vec![(0, field.one())]);
    b.build().expect("truncated polynomial is well formed")
}

/// An arrow of a quiver, with a cohomological degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
    pub deg: i64,
}

/// A linear combination of paths; each path lists arrows in the order they are traversed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Path {
    src: usize,
    arrows: Vec<usize>,
}

/// Path category of a graded quiver modulo relations, zero differential.
///
/// `bound` is a path-length saturation bound: every path of length `bound + 1`
/// must vanish modulo the relations, otherwise the category is rejected as
/// (possibly) infinite-dimensional.
pub fn quiver_path_category(
    field: Field,
    vertices: &[String],
    arrows: &[Arrow],
    relations: &[Relation],
    bound: usize,
) -> Result<DGCategory, DgError> {
    let nv = vertices.len();
    let tgt_of = |p: &Path| p.arrows.last().map_or(p.src, |a| arrows[*a].tgt);
    let deg_of = |p: &Path| p.arrows.iter().map(|a| arrows[*a].deg).sum::<i64>();
    for a in arrows {
        if a.src >= nv || a.tgt >= nv {
            return Err(DgError::Invalid(format!("arrow {} has an unknown endpoint", a.name)));
        }
    }
    // Homogeneity of relations.
    for (k, r) in relations.iter().enumerate() {
        let mut sig = None;
        for (_, path) in &r.terms {
            if path.is_empty() {
                return Err(DgError::NonHomogeneous(format!("relation {k} contains a trivial path")));
            }
            for w in path.windows(2) {
                if arrows[w[0]].tgt != arrows[w[1]].src {
                    return Err(DgError::Invalid(format!("relation {k} contains a non-composable path")));
                }
            }
            let p = Path { src: arrows[path[0]].src, arrows: path.clone() };
            let s = (p.src, tgt_of(&p), deg_of(&p));
            match sig {
                None => sig = Some(s),
                Some(t) if t != s => return Err(DgError::NonHomogeneous(format!("relation {k} mixes endpoints or degrees"))),
                _ => {}
            }
        }
    }
    // All paths of length ≤ bound + 1.
    let mut layers: Vec<Vec<Path>> = vec![(0..nv).map(|v| Path { src: v, arrows: Vec::new() }).collect()];
    for _ in 0..=bound {
        let last = layers.last().unwrap();
        let mut next = Vec::new();
        for p in last {
            let t = tgt_of(p);
            for (ai, a) in arrows.iter().enumerate() {
                if a.src == t {
                    let mut q = p.clone();
                    q.arrows.push(ai);
                    next.push(q);
                }
            }
        }
        layers.push(next);
    }
    // Index paths per (src, tgt), longest first so pivots are long paths.
    let mut per_pair: BTreeMap<(usize, usize), Vec<Path>> = BTreeMap::new();
    for layer in layers.iter().rev() {
        for p in layer {
            per_pair.entry((p.src, tgt_of(p))).or_default().push(p.clone());
        }
    }
    let index_of = |pair: &Vec<Path>, p: &Path| pair.iter().position(|q| q == p);
    // Ideal generated by the relations, truncated at length bound + 1.
    let mut ideals: BTreeMap<(usize, usize), Echelon> = BTreeMap::new();
    for (pair, paths) in &per_pair {
        ideals.insert(*pair, Echelon::new(field, paths.len()));
    }
    let all_paths: Vec<&Path> = layers.iter().flatten().collect();
    for r in relations {
        let rsrc = arrows[r.terms[0].1[0]].src;
        let rlen = r.terms.iter().map(|t| t.1.len()).max().unwrap_or(0);
        let rtgt = arrows[*r.terms[0].1.last().unwrap()].tgt;
        for pre in all_paths.iter().filter(|p| tgt_of(p) == rsrc) {
            for post in all_paths.iter().filter(|p| p.src == rtgt) {
                if pre.arrows.len() + rlen + post.arrows.len() > bound + 1 {
                    continue;
                }
                let pair = (pre.src, tgt_of(post));
                let paths = &per_pair[&pair];
                let mut entries = Vec::new();
                for (c, body) in &r.terms {
                    let mut arr = pre.arrows.clone();
                    arr.extend_from_slice(body);
                    arr.extend_from_slice(&post.arrows);
                    let q = Path { src: pre.src, arrows: arr };
                    entries.push((index_of(paths, &q).expect("path enumerated"), c.clone()));
                }
                let v = collect(field, entries);
                ideals.get_mut(&pair).unwrap().insert(v);
            }
        }
    }
    // Saturation: every path of length bound + 1 lies in the ideal.
    for p in &layers[bound + 1] {
        let pair = (p.src, tgt_of(p));
        let idx = index_of(&per_pair[&pair], p).unwrap();
        if !ideals[&pair].contains(&[(idx, field.one())]) {
            let names: Vec<&str> = p.arrows.iter().map(|a| arrows[*a].name.as_str()).collect();
            return Err(DgError::InfiniteDimensional(format!("path {} of length {} survives the relations", names.join("·"), bound + 1)));
        }
    }
    // Standard monomials are the non-pivot paths.
    let mut b = CategoryBuilder::new(field, "quiver", vertices.to_vec());
    let mut basis_idx: BTreeMap<(usize, usize), Vec<Option<usize>>> = BTreeMap::new();
    let mut basis_paths: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (pair, paths) in &per_pair {
        let pivots: std::collections::BTreeSet<usize> = ideals[pair].pivots().collect();
        let mut map = vec![None; paths.len()];
        // Present basis shortest first.
        let mut order: Vec<usize> = (0..paths.len()).filter(|i| !pivots.contains(i)).collect();
        order.sort_by_key(|i| (paths[*i].arrows.len(), paths[*i].arrows.clone()));
        for i in &order {
            let p = &paths[*i];
            let name = if p.arrows.is_empty() {
                format!("e_{}", vertices[p.src])
            } else {
                p.arrows.iter().rev().map(|a| arrows[*a].name.as_str()).collect::<Vec<_>>().join("·")
            };
            map[*i] = Some(b.add_basis(pair.0, pair.1, name, deg_of(p)));
        }
        basis_idx.insert(*pair, map);
        basis_paths.insert(*pair, order);
    }
    let reduce = |pair: (usize, usize), p: &Path| -> SVec {
        if p.arrows.len() > bound + 1 {
            return Vec::new();
        }
        let paths = &per_pair[&pair];
        let idx = index_of(paths, p).unwrap();
        let res = ideals[&pair].residue(&[(idx, field.one())]);
        let map = &basis_idx[&pair];
        let mut v: SVec = res.into_iter().map(|(i, c)| (map[i].expect("residue lives on standard monomials"), c)).collect();
        v.sort_by_key(|e| e.0);
        v
    };
    for x in 0..nv {
        for y in 0..nv {
            for z in 0..nv {
                let (Some(fs), Some(gs)) = (basis_paths.get(&(x, y)), basis_paths.get(&(y, z))) else {
                    continue;
                };
                for (i, pi) in fs.iter().enumerate() {
                    for (j, pj) in gs.iter().enumerate() {
                        let f = &per_pair[&(x, y)][*pi];
                        let g = &per_pair[&(y, z)][*pj];
                        let mut arr = f.arrows.clone();
                        arr.extend_from_slice(&g.arrows);
                        let v = reduce((x, z), &Path { src: x, arrows: arr });
                        b.set_comp(x, y, z, j, i, v);
                    }
                }
            }
        }
    }
    for v in 0..nv {
        let p = Path { src: v, arrows: Vec::new() };
        let u = reduce((v, v), &p);
        b.set_unit(v, u);
    }
    b.build()
}

/// Square-zero extension `C ⊕ D`: `hom'(x, y) = hom(x, y) ⊕ D(y, x)` and
/// `(g, ξ) ∘ (f, η) = (g ∘ f, g·η + ξ·f)`.
pub fn square_zero_extension(c: &Arc<DGCategory>, d: &Bimod, name: &str) -> DGCategory {
    let n = c.n_objects();
    let field = c.field();
    let mut b = CategoryBuilder::new(field, name, c.objects().to_vec());
    let offset = |x: usize, y: usize| c.hom_dim(x, y);
    for x in 0..n {
        for y in 0..n {
            for e in c.basis(x, y) {
                b.add_basis(x, y, e.name.clone(), e.deg);
            }
            let slot = d.slot(y, x);
            for (k, deg) in slot.degs().iter().enumerate() {
                let name = dual_name(c, y, x, k, slot.dim());
                b.add_basis(x, y, name, *deg);
            }
            for (i, col) in c.diff(x, y).columns.iter().enumerate() {
                for (k, v) in col {
                    b.add_diff(x, y, i, *k, v.clone());
                }
            }
            let o = offset(x, y);
            for (i, col) in slot.d().columns.iter().enumerate() {
                for (k, v) in col {
                    b.add_diff(x, y, o + i, o + k, v.clone());
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (ox, oy) = (offset(x, y), offset(y, z));
                let oz = offset(x, z);
                let nf = c.hom_dim(x, y) + d.slot(y, x).dim();
                let ng = c.hom_dim(y, z) + d.slot(z, y).dim();
                for i in 0..nf {
                    for j in 0..ng {
                        let v: SVec = match (i < ox, j < oy) {
                            (true, true) => c.comp_basis(x, y, z, j, i).clone(),
                            // g ∈ C acting on the left of η ∈ D(y, x).
                            (false, true) => d.lact(y, z, j, x).columns[i - ox].iter().map(|(k, s)| (oz + k, s.clone())).collect(),
                            // ξ ∈ D(z, y) acted on by f ∈ hom(x, y) from the right.
                            (true, false) => d.ract(x, y, i, z).columns[j - oy].iter().map(|(k, s)| (oz + k, s.clone())).collect(),
                            (false, false) => Vec::new(),
                        };
                        if !v.is_empty() {
                            b.set_comp(x, y, z, j, i, v);
                        }
                    }
                }
            }
        }
    }
    for x in 0..n {
        b.set_unit(x, c.unit(x).clone());
    }
    b.build().expect("square-zero extension is well formed")
}

fn dual_name(c: &DGCategory, y: usize, x: usize, k: usize, dim: usize) -> String {
    // D(y, x) for the shifted dual diagonal is hom(y, x)^*, so name it after hom(y, x).
    if dim == c.hom_dim(y, x) {
        format!("{}*", c.basis(y, x)[k].name)
    } else {
        format!("d{k}")
    }
}

/// `C ⊕ C^*[-s]`: the trivial extension whose pairing has degree `s`.
pub fn trivial_extension(c: &Arc<DGCategory>, pairing_degree: i64) -> DGCategory {
    let dual = Bimod::diagonal(c).linear_dual().shift(-pairing_degree);
    square_zero_extension(c, &dual, &format!("T({})", c.name()))
}

/// Opposite category with the Koszul sign `f ∘ᵒᵖ g = (-1)^{|f||g|} g ∘ f`.
pub fn opposite(c: &DGCategory) -> DGCategory {
    let n = c.n_objects();
    let field = c.field();
    let mut b = CategoryBuilder::new(field, &format!("{}^op", c.name()), c.objects().to_vec());
    for x in 0..n {
        for y in 0..n {
            for e in c.basis(y, x) {
                b.add_basis(x, y, e.name.clone(), e.deg);
            }
            for (i, col) in c.diff(y, x).columns.iter().enumerate() {
                for (k, v) in col {
                    b.add_diff(x, y, i, *k, v.clone());
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                // g ∈ homᵒᵖ(x, y) = hom(y, x), f ∈ homᵒᵖ(y, z) = hom(z, y).
                for i in 0..c.hom_dim(y, x) {
                    for j in 0..c.hom_dim(z, y) {
                        let sign = field.one().signed(c.deg(y, x, i) * c.deg(z, y, j));
                        let v = c.comp_basis(z, y, x, i, j).iter().map(|(k, s)| (*k, s * &sign)).collect();
                        b.set_comp(x, y, z, j, i, v);
                    }
                }
            }
        }
    }
    for x in 0..n {
        b.set_unit(x, c.unit(x).clone());
    }
    b.build().expect("opposite is well formed")
}

/// `A ⊗ B`: objects are pairs, `(f' ⊗ g') ∘ (f ⊗ g) = (-1)^{|g'||f|} (f'f) ⊗ (g'g)`.
pub fn tensor_cat(a: &DGCategory, bc: &DGCategory) -> DGCategory {
    let field = a.field();
    let (na, nb) = (a.n_objects(), bc.n_objects());
    let objects: Vec<String> = (0..na * nb).map(|k| format!("{}⊗{}", a.objects()[k / nb], bc.objects()[k % nb])).collect();
    let mut b = CategoryBuilder::new(field, &format!("{}⊗{}", a.name(), bc.name()), objects);
    let split = |o: usize| (o / nb, o % nb);
    let n = na * nb;
    for x in 0..n {
        for y in 0..n {
            let ((xa, xb), (ya, yb)) = (split(x), split(y));
            let db = bc.hom_dim(xb, yb);
            for f in a.basis(xa, ya) {
                for g in bc.basis(xb, yb) {
                    b.add_basis(x, y, format!("{}⊗{}", f.name, g.name), f.deg + g.deg);
                }
            }
            for i in 0..a.hom_dim(xa, ya) {
                for j in 0..db {
                    let idx = i * db + j;
                    for (k, v) in a.d(xa, ya, &a.basis_vec(i)) {
                        b.add_diff(x, y, idx, k * db + j, v);
                    }
                    let sign = field.one().signed(a.deg(xa, ya, i));
                    for (k, v) in bc.d(xb, yb, &bc.basis_vec(j)) {
                        b.add_diff(x, y, idx, i * db + k, &v * &sign);
                    }
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let ((xa, xb), (ya, yb), (za, zb)) = (split(x), split(y), split(z));
                let (d1, d2, d3) = (bc.hom_dim(xb, yb), bc.hom_dim(yb, zb), bc.hom_dim(xb, zb));
                for fi in 0..a.hom_dim(xa, ya) {
                    for gi in 0..d1 {
                        for fj in 0..a.hom_dim(ya, za) {
                            for gj in 0..d2 {
                                let sign = field.one().signed(bc.deg(yb, zb, gj) * a.deg(xa, ya, fi));
                                let ff = a.comp_basis(xa, ya, za, fj, fi);
                                let gg = bc.comp_basis(xb, yb, zb, gj, gi);
                                let mut v = Vec::new();
                                for (p, s) in ff {
                                    for (q, t) in gg {
                                        v.push((p * d3 + q, &(s * t) * &sign));
                                    }
                                }
                                b.set_comp(x, y, z, fj * d2 + gj, fi * d1 + gi, collect(field, v));
                            }
                        }
                    }
                }
            }
        }
    }
    for x in 0..n {
        let (xa, xb) = split(x);
        let db = bc.hom_dim(xb, xb);
        let mut v = Vec::new();
        for (p, s) in a.unit(xa) {
            for (q, t) in bc.unit(xb) {
                v.push((p * db + q, s * t));
            }
        }
        b.set_unit(x, collect(field, v));
    }
    b.build().expect("tensor category is well formed")
}

/// Upper-triangular gluing `B ⊔_φ A` of an `A`-`B` bimodule `φ`.
///
/// Objects are `Obj(B)` followed by `Obj(A)`; `hom(b, a) = φ(a, b)` and there
/// are no morphisms from `A`-objects to `B`-objects.
pub fn glue(bc: &Arc<DGCategory>, a: &Arc<DGCategory>, phi: &Bimod) -> Result<DGCategory, DgError> {
    if !Arc::ptr_eq(phi.left(), a) && **phi.left() != **a {
        return Err(DgError::Invalid("φ must be a bimodule over (A, B)".into()));
    }
    if !Arc::ptr_eq(phi.right(), bc) && **phi.right() != **bc {
        return Err(DgError::Invalid("φ must be a bimodule over (A, B)".into()));
    }
    phi.validate().into_result()?;
    let field = a.field();
    let (nb, na) = (bc.n_objects(), a.n_objects());
    // Colliding names get the side they come from appended.
    let clash = bc.objects().iter().any(|o| a.objects().contains(o));
    let tag = |o: &String, side: &str| {
        if clash {
            format!("{o}_{side}")
        } else {
            o.clone()
        }
    };
    let mut objects: Vec<String> = bc.objects().iter().map(|o| tag(o, "b")).collect();
    objects.extend(a.objects().iter().map(|o| tag(o, "a")));
    let mut b = CategoryBuilder::new(field, &format!("{}⊔{}", bc.name(), a.name()), objects);
    #[derive(Clone, Copy)]
    enum Side {
        B(usize),
        A(usize),
    }
    let side = |o: usize| if o < nb { Side::B(o) } else { Side::A(o - nb) };
    let n = nb + na;
    for x in 0..n {
        for y in 0..n {
            match (side(x), side(y)) {
                (Side::B(p), Side::B(q)) => copy_hom(&mut b, bc, x, y, p, q),
                (Side::A(p), Side::A(q)) => copy_hom(&mut b, a, x, y, p, q),
                (Side::B(p), Side::A(q)) => {
                    let s = phi.slot(q, p);
                    for (k, deg) in s.degs().iter().enumerate() {
                        b.add_basis(x, y, format!("φ{k}"), *deg);
                    }
                    for (i, col) in s.d().columns.iter().enumerate() {
                        for (k, v) in col {
                            b.add_diff(x, y, i, *k, v.clone());
                        }
                    }
                }
                (Side::A(_), Side::B(_)) => {}
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let nf = b.hom_len(x, y);
                let ng = b.hom_len(y, z);
                for i in 0..nf {
                    for j in 0..ng {
                        let v: SVec = match (side(x), side(y), side(z)) {
                            (Side::B(p), Side::B(q), Side::B(r)) => bc.comp_basis(p, q, r, j, i).clone(),
                            (Side::A(p), Side::A(q), Side::A(r)) => a.comp_basis(p, q, r, j, i).clone(),
                            // f ∈ A(q, r) after x ∈ φ(q, p).
                            (Side::B(p), Side::A(q), Side::A(r)) => phi.lact(q, r, j, p).columns[i].clone(),
                            // x ∈ φ(r, q) after g ∈ B(p, q).
                            (Side::B(p), Side::B(q), Side::A(r)) => phi.ract(p, q, i, r).columns[j].clone(),
                            _ => Vec::new(),
                        };
                        if !v.is_empty() {
                            b.set_comp(x, y, z, j, i, v);
                        }
                    }
                }
            }
        }
    }
    for x in 0..n {
        match side(x) {
            Side::B(p) => b.set_unit(x, bc.unit(p).clone()),
            Side::A(p) => b.set_unit(x, a.unit(p).clone()),
        }
    }
    b.build()
}

fn copy_hom(b: &mut CategoryBuilder, c: &DGCategory, x: usize, y: usize, p: usize, q: usize) {
    for e in c.basis(p, q) {
        b.add_basis(x, y, e.name.clone(), e.deg);
    }
    for (i, col) in c.diff(p, q).columns.iter().enumerate() {
        for (k, v) in col {
            b.add_diff(x, y, i, *k, v.clone());
        }
    }
}

/// The Kronecker quiver `2 ⇉ 1` with both arrows in degree `deg`.
pub fn kronecker(field: Field, deg: i64) -> DGCategory {
    let vertices = vec!["1".to_string(), "2".to_string()];
    let arrows = vec![Arrow { name: "a".into(), src: 1, tgt: 0, deg }, Arrow { name: "b".into(), src: 1, tgt: 0, deg }];
    quiver_path_category(field, &vertices, &arrows, &[], 1).expect("Kronecker quiver is finite").with_name("Kronecker")
}

/// The zigzag category of type Ã₁: trivial extension of the Kronecker quiver
/// with arrows in degree 1, pairing in degree 2.
pub fn zigzag(field: Field) -> DGCategory {
    trivial_extension(&Arc::new(kronecker(field, 1)), 2).with_name("Z")
}
