//! Constructors for standard group families, a name-based registry, and the
//! bundled table of class spectra.

mod table1;

use std::collections::BTreeMap;

use rug::Rational;

use crate::cyclo::{CycloMatrix, CycloNum};
use crate::group::{GroupError, GroupMetadata, GroupSpec};

pub use table1::{
    bundled_table1, bundled_table1_errata, load_class_spectra, parse_class_spectra, to_json as table1_to_json,
    verify_table1, ClassSpectrumRecord, DeltaDescriptor, RowCheck, Table1Report,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), CatalogError> {
    if cond {
        Ok(())
    } else {
        Err(CatalogError::InvalidParameter(msg()))
    }
}

/// Matrix of a permutation of `{0..n-1}` on the sum-zero hyperplane of
/// `C^n`, in the basis `f_i = e_i - e_{i+1}`.
pub fn deleted_permutation_matrix(perm: &[usize]) -> CycloMatrix {
    let n = perm.len();
    let d = n - 1;
    let mut rows = vec![vec![0i64; d]; d];
    for j in 0..d {
        // Image of f_j in coordinates of C^n, then partial sums give f-coordinates.
        let mut v = vec![0i64; n];
        v[perm[j]] += 1;
        v[perm[j + 1]] -= 1;
        let mut acc = 0;
        for i in 0..d {
            acc += v[i];
            rows[i][j] = acc;
        }
    }
    CycloMatrix::from_integer_rows(&rows)
}

fn cycle(n: usize, points: &[usize]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for w in 0..points.len() {
        p[points[w]] = points[(w + 1) % points.len()];
    }
    p
}

/// `S_n`, or `A_n` when `alternating`, on the deleted permutation module.
pub fn deleted_permutation(n: usize, alternating: bool) -> Result<GroupSpec, CatalogError> {
    check(n >= 3, || format!("deleted_permutation needs n >= 3, got {n}"))?;
    let gens = if alternating {
        (0..n - 2).map(|i| deleted_permutation_matrix(&cycle(n, &[i, i + 1, i + 2]))).collect()
    } else {
        (0..n - 1).map(|i| deleted_permutation_matrix(&cycle(n, &[i, i + 1]))).collect()
    };
    let meta = GroupMetadata { primitive: Some(n >= 5), ..Default::default() };
    let name = if alternating { "A" } else { "S" };
    Ok(GroupSpec::with_conductor(n - 1, 1, gens, meta)?
        .with_label(format!("{name}{n} on the deleted permutation module")))
}

fn lines(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| vec![i]).collect()
}

/// The monomial group `G(d, e, n)` of order `d^n n! / e`.
pub fn imprimitive_reflection(d: u32, e: u32, n: usize) -> Result<GroupSpec, CatalogError> {
    check(d >= 1 && n >= 2, || format!("G(d,e,n) needs d >= 1 and n >= 2, got d={d}, n={n}"))?;
    check(e >= 1 && d.is_multiple_of(e), || format!("e={e} must divide d={d}"))?;
    let one = CycloNum::one(d);
    let mut gens = Vec::new();
    for i in 0..n - 1 {
        gens.push(CycloMatrix::permutation(&cycle(n, &[i, i + 1])).embed(d).expect("rational matrix"));
    }
    if e < d {
        let mut c = vec![one.clone(); n];
        c[0] = CycloNum::root_of_unity(d, e as i64);
        gens.push(CycloMatrix::diagonal(&c).embed(d).expect("conductor divides d"));
    }
    if e > 1 {
        let mut c = vec![one.clone(); n];
        c[0] = CycloNum::root_of_unity(d, 1);
        c[1] = CycloNum::root_of_unity(d, -1);
        gens.push(CycloMatrix::monomial(&cycle(n, &[0, 1]), &c).embed(d).expect("conductor divides d"));
    }
    let meta =
        GroupMetadata { block_system: Some(lines(n)), primitive: (d > 1).then_some(false), ..Default::default() };
    Ok(GroupSpec::with_conductor(n, d, gens, meta)?.with_label(format!("G({d},{e},{n})")))
}

/// Block matrix placing `blocks[(i, j)]` at block position `(i, j)` of an `m x m` grid of `k x k` blocks.
fn block_matrix(k: usize, m: usize, n: u32, blocks: &BTreeMap<(usize, usize), CycloMatrix>) -> CycloMatrix {
    CycloMatrix::from_fn(k * m, n, |r, c| match blocks.get(&(r / k, c / k)) {
        Some(b) => b.get(r % k, c % k).embed(n).expect("common conductor"),
        None => CycloNum::zero(n),
    })
}

/// `H wr S_m`: block-diagonal copies of `H` in the first block, and the
/// adjacent block transpositions.
pub fn wreath(h: &GroupSpec, m: usize) -> Result<GroupSpec, CatalogError> {
    check(m >= 2, || format!("wreath needs m >= 2, got {m}"))?;
    let k = h.dim;
    let n = h.conductor;
    let id = CycloMatrix::identity(k, n);
    let mut gens = Vec::new();
    for g in &h.generators {
        let mut b = BTreeMap::new();
        b.insert((0, 0), g.clone());
        for i in 1..m {
            b.insert((i, i), id.clone());
        }
        gens.push(block_matrix(k, m, n, &b));
    }
    for j in 0..m - 1 {
        let mut b = BTreeMap::new();
        for i in 0..m {
            let target = if i == j {
                j + 1
            } else if i == j + 1 {
                j
            } else {
                i
            };
            b.insert((target, i), id.clone());
        }
        gens.push(block_matrix(k, m, n, &b));
    }
    let blocks = (0..m).map(|i| (i * k..(i + 1) * k).collect()).collect();
    let meta = GroupMetadata { block_system: Some(blocks), primitive: Some(false), ..Default::default() };
    let label = format!("({}) wr S{m}", h.metadata.label.as_deref().unwrap_or("H"));
    Ok(GroupSpec::with_conductor(k * m, n, gens, meta)?.with_label(label))
}

/// The element `(v1, v2, v3, ...) -> (v2, h v1, v3, ...)` of `H wr S_m`.
pub fn wreath_swap_element(h: &CycloMatrix, m: usize) -> CycloMatrix {
    assert!(m >= 2, "wreath swap needs two blocks");
    let k = h.dim();
    let n = h.conductor();
    let id = CycloMatrix::identity(k, n);
    let mut b = BTreeMap::new();
    b.insert((0, 1), id.clone());
    b.insert((1, 0), h.clone());
    for i in 2..m {
        b.insert((i, i), id.clone());
    }
    block_matrix(k, m, n, &b)
}

/// Generators `a (x) 1` and `1 (x) b` of the tensor product action.
pub fn tensor_product(g1: &GroupSpec, g2: &GroupSpec) -> Result<GroupSpec, CatalogError> {
    let n = crate::cyclo::poly::lcm(g1.conductor, g2.conductor);
    let i1 = CycloMatrix::identity(g1.dim, n);
    let i2 = CycloMatrix::identity(g2.dim, n);
    let mut gens = Vec::new();
    for a in &g1.generators {
        gens.push(a.embed(n).expect("lcm conductor").kron(&i2));
    }
    for b in &g2.generators {
        gens.push(i1.kron(&b.embed(n).expect("lcm conductor")));
    }
    let meta = GroupMetadata { tensor_structure: Some(vec![g1.dim, g2.dim]), ..Default::default() };
    let label = format!(
        "({}) x ({})",
        g1.metadata.label.as_deref().unwrap_or("G1"),
        g2.metadata.label.as_deref().unwrap_or("G2")
    );
    Ok(GroupSpec::with_conductor(g1.dim * g2.dim, n, gens, meta)?.with_label(label))
}

/// Monomial group generated by `y_1, x_2, ..., x_{n-2}, z_{n-1}` over `Q(zeta_6)`:
/// `y_1` swaps the first two lines and scales the last by `exp(pi i/3)`, `x_i`
/// swaps lines `i, i+1` and negates the last, `z_{n-1}` swaps the last two
/// lines and negates line `n-2`.
pub fn example_impr5(n: usize) -> Result<GroupSpec, CatalogError> {
    check(n >= 5, || format!("impr5 needs n >= 5, got {n}"))?;
    let mono = |a: usize, b: usize, k: usize, e: i64| {
        let mut c = vec![CycloNum::one(6); n];
        c[k] = CycloNum::root_of_unity(6, e);
        CycloMatrix::monomial(&cycle(n, &[a, b]), &c).embed(6).expect("conductor 6")
    };
    let mut gens = vec![mono(0, 1, n - 1, 1)];
    for i in 2..=n - 2 {
        gens.push(mono(i - 1, i, n - 1, 3));
    }
    gens.push(mono(n - 2, n - 1, n - 3, 3));
    let meta = GroupMetadata { block_system: Some(lines(n)), primitive: Some(false), ..Default::default() };
    Ok(GroupSpec::with_conductor(n, 6, gens, meta)?.with_label(format!("impr5({n})")))
}

/// `<diag(zeta_r^{a_1}, ..., zeta_r^{a_d})>`.
pub fn cyclic_quotient(weights: &[i64], r: u32) -> Result<GroupSpec, CatalogError> {
    check(r >= 2, || format!("cyclic needs r >= 2, got {r}"))?;
    check(!weights.is_empty(), || "cyclic needs at least one weight".into())?;
    let d: Vec<CycloNum> = weights.iter().map(|&a| CycloNum::root_of_unity(r, a)).collect();
    let g = CycloMatrix::diagonal(&d).embed(r).expect("conductor r");
    let w: Vec<String> = weights.iter().map(|a| a.to_string()).collect();
    Ok(GroupSpec::with_conductor(weights.len(), r, vec![g], GroupMetadata::default())?
        .with_label(format!("1/{r}({})", w.join(","))))
}

/// The binary icosahedral group `SL_2(5)` in dimension 2 over `Q(zeta_5)`.
pub fn binary_icosahedral() -> GroupSpec {
    let z = |k: i64| CycloNum::root_of_unity(5, k);
    // sqrt(5) = z - z^2 - z^3 + z^4, so 1/sqrt(5) = sqrt(5)/5.
    let sqrt5 = &(&(&z(1) - &z(2)) - &z(3)) + &z(4);
    let inv = sqrt5.scale(&Rational::from((1, 5)));
    let a = &inv * &(&z(4) - &z(1));
    let b = &inv * &(&z(2) - &z(3));
    let s = CycloMatrix::diagonal(&[z(3), z(2)]);
    let t = CycloMatrix::new(2, vec![a.clone(), b.clone(), b, -&a]).expect("2x2");
    GroupSpec::with_conductor(2, 5, vec![s, t], GroupMetadata { primitive: Some(true), ..Default::default() })
        .expect("valid generators")
        .with_label("SL2(5)")
}

/// Cartan matrix of type `E_r`, `r` in 6..=8, with the usual node numbering
/// (chain 1-3-4-5-..., node 2 attached to node 4).
fn cartan_e(r: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; r]; r];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut edges = vec![(1, 3), (2, 4), (3, 4)];
    for j in 4..r {
        edges.push((j, j + 1));
    }
    for (x, y) in edges {
        a[x - 1][y - 1] = -1;
        a[y - 1][x - 1] = -1;
    }
    a
}

/// Weyl group of type `E_6`, `E_7` or `E_8` acting on the root lattice.
pub fn weyl_e(rank: usize) -> Result<GroupSpec, CatalogError> {
    check((6..=8).contains(&rank), || format!("weyl type E{rank} is not available"))?;
    let a = cartan_e(rank);
    let gens = (0..rank)
        .map(|i| {
            let rows: Vec<Vec<i64>> = (0..rank)
                .map(|r| (0..rank).map(|c| i64::from(r == c) - if r == i { a[i][c] } else { 0 }).collect())
                .collect();
            CycloMatrix::from_integer_rows(&rows)
        })
        .collect();
    let meta = GroupMetadata { primitive: Some(true), ..Default::default() };
    Ok(GroupSpec::with_conductor(rank, 1, gens, meta)?.with_label(format!("W(E{rank})")))
}

/// A catalog entry with its parameters and their defaults.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub params: &'static [(&'static str, &'static str)],
    pub description: &'static str,
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "deleted_permutation",
        params: &[("n", "5"), ("alternating", "false")],
        description: "S_n or A_n on the (n-1)-dimensional deleted permutation module",
    },
    CatalogEntry {
        name: "imprimitive_reflection",
        params: &[("d", "2"), ("e", "1"), ("n", "3")],
        description: "monomial reflection group G(d,e,n)",
    },
    CatalogEntry {
        name: "cyclic",
        params: &[("weights", "1,1"), ("r", "2")],
        description: "cyclic group generated by diag(zeta_r^w1, ..., zeta_r^wd)",
    },
    CatalogEntry {
        name: "impr5",
        params: &[("n", "5")],
        description: "monomial group on n lines generated by elements of age 2/3",
    },
    CatalogEntry { name: "binary_icosahedral", params: &[], description: "SL2(5) in dimension 2" },
    CatalogEntry {
        name: "weyl",
        params: &[("type", "E6")],
        description: "Weyl group of type E6, E7 or E8 on its root lattice",
    },
    CatalogEntry {
        name: "wreath",
        params: &[("base", "cyclic"), ("r", "2"), ("m", "3")],
        description: "H wr S_m with H cyclic of order r in dimension 1, or H = binary_icosahedral",
    },
    CatalogEntry {
        name: "deleted_tensor",
        params: &[("m", "4")],
        description: "S_m x S_m on the tensor square of the deleted permutation module",
    },
];

fn param<T: std::str::FromStr>(
    p: &BTreeMap<String, String>,
    entry: &CatalogEntry,
    key: &str,
) -> Result<T, CatalogError> {
    let default = entry.params.iter().find(|(k, _)| *k == key).map(|(_, v)| *v).unwrap_or("");
    let raw = p.get(key).map(String::as_str).unwrap_or(default);
    raw.trim().parse().map_err(|_| CatalogError::InvalidParameter(format!("{key}={raw}")))
}

/// Builds a catalog group from its name and `key=value` parameters.
pub fn build(name: &str, params: &BTreeMap<String, String>) -> Result<GroupSpec, CatalogError> {
    let entry = ENTRIES.iter().find(|e| e.name == name).ok_or_else(|| CatalogError::UnknownName(name.to_string()))?;
    if let Some(k) = params.keys().find(|k| !entry.params.iter().any(|(p, _)| p == k)) {
        return Err(CatalogError::InvalidParameter(format!("`{name}` takes no parameter `{k}`")));
    }
    let p = |k: &str| param::<usize>(params, entry, k);
    let u = |k: &str| param::<u32>(params, entry, k);
    match name {
        "deleted_permutation" => deleted_permutation(p("n")?, param(params, entry, "alternating")?),
        "imprimitive_reflection" => imprimitive_reflection(u("d")?, u("e")?, p("n")?),
        "cyclic" => {
            let raw: String = param(params, entry, "weights")?;
            let w = raw
                .split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| CatalogError::InvalidParameter(format!("weights={raw}")))?;
            cyclic_quotient(&w, u("r")?)
        }
        "impr5" => example_impr5(p("n")?),
        "binary_icosahedral" => Ok(binary_icosahedral()),
        "weyl" => {
            let t: String = param(params, entry, "type")?;
            let rank = t
                .strip_prefix(['E', 'e'])
                .and_then(|r| r.parse().ok())
                .ok_or_else(|| CatalogError::InvalidParameter(format!("type={t}")))?;
            weyl_e(rank)
        }
        "wreath" => {
            let base: String = param(params, entry, "base")?;
            let h = match base.as_str() {
                "cyclic" => cyclic_quotient(&[1], u("r")?)?,
                "binary_icosahedral" => binary_icosahedral(),
                _ => return Err(CatalogError::InvalidParameter(format!("base={base}"))),
            };
            wreath(&h, p("m")?)
        }
        "deleted_tensor" => {
            let m = p("m")?;
            let g = deleted_permutation(m, false)?;
            tensor_product(&g, &g)
        }
        _ => unreachable!("entry list and builder agree"),
    }
}

/// Parses `key=value` words.
pub fn parse_params<S: AsRef<str>>(words: &[S]) -> Result<BTreeMap<String, String>, CatalogError> {
    let mut out = BTreeMap::new();
    for w in words {
        let w = w.as_ref();
        let (k, v) = w
            .split_once('=')
            .ok_or_else(|| CatalogError::InvalidParameter(format!("expected key=value, got `{w}`")))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deleted_matrix_of_transposition() {
        let m = deleted_permutation_matrix(&cycle(4, &[0, 1]));
        assert_eq!(m.spectrum(100).unwrap().to_strings(), ["0", "0", "1/2"]);
        let m = deleted_permutation_matrix(&cycle(4, &[0, 1, 2]));
        assert_eq!(m.spectrum(100).unwrap().to_strings(), ["0", "1/3", "2/3"]);
    }

    #[test]
    fn cartan_e6_is_symmetric_with_six_edges() {
        let a = cartan_e(6);
        let edges: i64 =
            (0..6).flat_map(|i| (0..6).map(move |j| (i, j))).filter(|&(i, j)| i < j).map(|(i, j)| -a[i][j]).sum();
        assert_eq!(edges, 5);
        assert_eq!(a[1][3], -1);
    }

    #[test]
    fn params_and_names() {
        let p = parse_params(&["n=4", "alternating=true"]).unwrap();
        assert_eq!(build("deleted_permutation", &p).unwrap().generators.len(), 2);
        assert!(matches!(build("nope", &p), Err(CatalogError::UnknownName(_))));
        assert!(matches!(build("impr5", &p), Err(CatalogError::InvalidParameter(_))));
    }
}
