use super::algebras::{invariant_matrices, symplectic_gram};
use super::forms::Flag;
use crate::error::{Error, Result};
use crate::exactlin::{rat, ratio, Rat, RatMatrix};
use crate::liealg::LieAlgebra;

/// Names accepted by [`zoo`], with the parameter each one takes.
pub const ZOO_NAMES: &[(&str, Option<&str>)] = &[
    ("heisenberg", Some("e")),
    ("sp_heisenberg", Some("r")),
    ("sp_k_heisenberg", Some("r")),
    ("borel_sl2", None),
    ("f_algebra", None),
    ("bh5", None),
    ("borel_sl3", None),
    ("ghat", None),
];

/// Example algebras, each with a faithful algebraic realization.
///
/// - `heisenberg(e)`: `[x_i, y_i] = z`, dimension `2e + 1`.
/// - `sp_heisenberg(r)`: `sp(2r) + h` as the stabilizer of a vector in `sp(2r + 2)`.
/// - `sp_k_heisenberg(r)`: `(sp(2r) x K) + h` as the stabilizer of a line in `sp(2r + 2)`.
/// - `borel_sl2`: `[h, x] = 2x`.
/// - `f_algebra`: `borel_sl2` plus `e, f` with `[h,e] = e`, `[h,f] = -f`, `[x,f] = e`.
/// - `bh5`: `f_algebra` with the extra bracket `[e, f] = z`, `z` central.
/// - `borel_sl3`: `[h_i, x_j] = 2 delta_ij x_j`, `[h_i, z] = 2z`, `[x_1, x_2] = z`.
/// - `ghat`: `[x,y] = z`, `[s,x] = x`, `[s,y] = y`, `[s,z] = 2z`, `[u,x] = y`.
pub fn zoo(name: &str, param: Option<usize>) -> Result<LieAlgebra> {
    let p = |default: usize| -> Result<usize> {
        let v = param.unwrap_or(default);
        if v == 0 {
            return Err(Error::Domain(format!("{name} needs a positive parameter")));
        }
        Ok(v)
    };
    let no_param = || -> Result<()> {
        if param.is_some() {
            return Err(Error::Domain(format!("{name} takes no parameter")));
        }
        Ok(())
    };
    match name {
        "heisenberg" => heisenberg(p(1)?),
        "sp_heisenberg" => sp_heisenberg(p(1)?),
        "sp_k_heisenberg" => sp_k_heisenberg(p(1)?),
        "borel_sl2" => no_param().and_then(|_| borel_sl2()),
        "f_algebra" => no_param().and_then(|_| f_algebra()),
        "bh5" => no_param().and_then(|_| bh5()),
        "borel_sl3" => no_param().and_then(|_| borel_sl3()),
        "ghat" => no_param().and_then(|_| ghat()),
        other => Err(Error::Domain(format!(
            "unknown algebra {other:?}; known: {}",
            ZOO_NAMES.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", ")
        ))),
    }
}

/// Strictly upper triangular `(e+2) x (e+2)`: `x_i = E_{0,i}`,
/// `y_i = E_{i,e+1}`, `z = E_{0,e+1}`.
pub fn heisenberg(e: usize) -> Result<LieAlgebra> {
    let mut labels: Vec<String> = (1..=e).map(|i| format!("x{i}")).collect();
    labels.extend((1..=e).map(|i| format!("y{i}")));
    labels.push("z".into());
    let z = 2 * e;
    let table: Vec<(usize, usize, Vec<(usize, i64)>)> = (0..e).map(|i| (i, e + i, vec![(z, 1)])).collect();
    let alg = from_table(&labels, &table)?;
    let n = e + 2;
    let mut mats: Vec<RatMatrix> = (1..=e).map(|i| RatMatrix::unit(n, 0, i)).collect();
    mats.extend((1..=e).map(|i| RatMatrix::unit(n, i, e + 1)));
    mats.push(RatMatrix::unit(n, 0, e + 1));
    alg.with_realization(mats)
}

pub fn sp_heisenberg(r: usize) -> Result<LieAlgebra> {
    let n = 2 * r + 2;
    let j = symplectic_gram(r + 1);
    let mut v = vec![rat(0); n];
    v[0] = rat(1);
    LieAlgebra::from_matrices(invariant_matrices(n, Some(&j), None, &[v])?)
}

pub fn sp_k_heisenberg(r: usize) -> Result<LieAlgebra> {
    let n = 2 * r + 2;
    let j = symplectic_gram(r + 1);
    let line = Flag::standard(n, &[1])?;
    LieAlgebra::from_matrices(invariant_matrices(n, Some(&j), Some(&line), &[])?)
}

pub fn borel_sl2() -> Result<LieAlgebra> {
    let alg = from_table(&["h", "x"], &[(0, 1, vec![(1, 2)])])?;
    alg.with_realization(vec![
        RatMatrix::from_i64(&[&[1, 0], &[0, -1]]),
        RatMatrix::unit(2, 0, 1),
    ])
}

fn f_table() -> Vec<(usize, usize, Vec<(usize, i64)>)> {
    // h x e f
    vec![
        (0, 1, vec![(1, 2)]),
        (0, 2, vec![(2, 1)]),
        (0, 3, vec![(3, -1)]),
        (1, 3, vec![(2, 1)]),
    ]
}

pub fn f_algebra() -> Result<LieAlgebra> {
    from_table(&["h", "x", "e", "f"], &f_table())?.with_adjoint_realization()
}

/// Realized in `sp(4)` as the stabilizer of a vector, with the `sl2`
/// part upper triangular: `e = E_02 + E_13`, `f = -E_01 + E_23`,
/// `z = 2 E_03`.
pub fn bh5() -> Result<LieAlgebra> {
    let mut table = f_table();
    table.push((2, 3, vec![(4, 1)]));
    let alg = from_table(&["h", "x", "e", "f", "z"], &table)?;
    let u = |i, j| RatMatrix::unit(4, i, j);
    let h = &u(1, 1) - &u(2, 2);
    let x = u(1, 2);
    let e = &u(0, 2) + &u(1, 3);
    let f = &u(2, 3) - &u(0, 1);
    let z = u(0, 3).scale(&rat(2));
    alg.with_realization(vec![h, x, e, f, z])
}

pub fn borel_sl3() -> Result<LieAlgebra> {
    // h1 h2 x1 x2 z
    let table = vec![
        (0, 2, vec![(2, 2)]),
        (0, 4, vec![(4, 2)]),
        (1, 3, vec![(3, 2)]),
        (1, 4, vec![(4, 2)]),
        (2, 3, vec![(4, 1)]),
    ];
    let alg = from_table(&["h1", "h2", "x1", "x2", "z"], &table)?;
    let d = |a: Rat, b: Rat, c: Rat| RatMatrix::diag(&[a, b, c]);
    let h1 = d(ratio(4, 3), ratio(-2, 3), ratio(-2, 3));
    let h2 = d(ratio(2, 3), ratio(2, 3), ratio(-4, 3));
    alg.with_realization(vec![
        h1,
        h2,
        RatMatrix::unit(3, 0, 1),
        RatMatrix::unit(3, 1, 2),
        RatMatrix::unit(3, 0, 2),
    ])
}

pub fn ghat() -> Result<LieAlgebra> {
    // s u x y z
    let table = vec![
        (2, 3, vec![(4, 1)]),
        (0, 2, vec![(2, 1)]),
        (0, 3, vec![(3, 1)]),
        (0, 4, vec![(4, 2)]),
        (1, 2, vec![(3, 1)]),
    ];
    from_table(&["s", "u", "x", "y", "z"], &table)?.with_adjoint_realization()
}

fn from_table<S: AsRef<str>>(labels: &[S], table: &[(usize, usize, Vec<(usize, i64)>)]) -> Result<LieAlgebra> {
    let labels: Vec<&str> = labels.iter().map(AsRef::as_ref).collect();
    let borrowed: Vec<(usize, usize, &[(usize, i64)])> =
        table.iter().map(|(i, j, v)| (*i, *j, v.as_slice())).collect();
    LieAlgebra::from_int_table(&labels, &borrowed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::SampleConfig;

    fn cfg() -> SampleConfig {
        SampleConfig::default()
    }

    /// The realization must reproduce the bracket table exactly.
    fn assert_faithful(alg: &LieAlgebra) {
        let mats = alg.realization().expect("realized").to_vec();
        let again = LieAlgebra::from_matrices_labeled(mats, alg.labels().to_vec()).unwrap();
        assert_eq!(again.table(), alg.table());
    }

    #[test]
    fn every_zoo_algebra_is_faithfully_realized() {
        for (name, param) in ZOO_NAMES {
            let alg = zoo(name, param.map(|_| 2)).unwrap();
            assert_faithful(&alg);
        }
    }

    #[test]
    fn dimensions() {
        assert_eq!(zoo("heisenberg", Some(2)).unwrap().dim(), 5);
        assert_eq!(zoo("sp_heisenberg", Some(1)).unwrap().dim(), 6);
        assert_eq!(zoo("sp_k_heisenberg", Some(1)).unwrap().dim(), 7);
        assert_eq!(zoo("sp_k_heisenberg", Some(2)).unwrap().dim(), 16);
        assert_eq!(zoo("bh5", None).unwrap().dim(), 5);
        assert_eq!(zoo("ghat", None).unwrap().dim(), 5);
    }

    #[test]
    fn indices() {
        assert_eq!(zoo("heisenberg", Some(2)).unwrap().index(&cfg()).unwrap().index, 1);
        assert_eq!(borel_sl2().unwrap().index(&cfg()).unwrap().index, 0);
        assert_eq!(f_algebra().unwrap().index(&cfg()).unwrap().index, 0);
        assert_eq!(bh5().unwrap().index(&cfg()).unwrap().index, 1);
        assert_eq!(borel_sl3().unwrap().index(&cfg()).unwrap().index, 1);
    }

    #[test]
    fn bad_names_and_params() {
        assert!(zoo("nope", None).is_err());
        assert!(zoo("heisenberg", Some(0)).is_err());
        assert!(zoo("bh5", Some(1)).is_err());
    }
}
