//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs without the libtest harness so the report is
//! always printed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use flowface::compositions::compositions_of;
use flowface::counts::{cry_edge_count, cry_vertex_count, flow_vertex_count, low_codim_face_count};
use flowface::facecount::{
    cry_face_count_binomial, cry_fpoly, cry_primitive_fpoly, fpoly_from_primitive, fpoly_main,
    helper_identity_check, primitive_fpoly, primitive_fpoly_subsets,
};
use flowface::fishburn::{graph_to_matrix, matrix_to_graph, primitive_matrices};
use flowface::genfunc::{
    cry_face_series, primitive_polys_from_jelinek, product_identity_check, product_identity_sides,
    ProductForm,
};
use flowface::laurent::q_factorial_shifted;
use flowface::oracle::{self, OracleConfig};
use flowface::{FVector, LaurentPoly, NetflowVector};
use num_bigint::BigInt;

/// f-vectors of `CRY_1 .. CRY_8`, from dimension -1 up.
const TABLE_F: [&str; 8] = [
    "1, 1",
    "1, 2, 1",
    "1, 4, 6, 4, 1",
    "1, 8, 26, 45, 45, 26, 8, 1",
    "1, 16, 98, 327, 681, 944, 897, 588, 262, 76, 13, 1",
    "1, 32, 342, 1943, 6982, 17326, 31236, 42198, 43521, 34601, 21249, 10020, 3571, 933, 169, 19, 1",
    "1, 64, 1138, 10275, 58093, 228396, 664200, 1486921, 2633161, 3759650, 4386239, 4218971, 3363558, \
     2227042, 1222927, 554147, 205256, 61206, 14351, 2550, 323, 26, 1",
    "1, 128, 3670, 50403, 424214, 2468235, 10653629, 35711651, 95967645, 211567734, 389268482, 605593465, \
     804533944, 919531124, 909049826, 780149435, 582376682, 378321185, 213630918, 104570683, 44165758, \
     15985336, 4910781, 1263620, 267378, 45321, 5918, 559, 34, 1",
];

/// Primitive f-vectors of `CRY_1 .. CRY_8`, from dimension -1 up.
const TABLE_PRIMITIVE: [&str; 8] = [
    "0, 1",
    "0, 1, 1",
    "0, 1, 4, 4, 1",
    "0, 1, 11, 33, 42, 26, 8, 1",
    "0, 1, 26, 171, 507, 840, 865, 584, 262, 76, 13, 1",
    "0, 1, 57, 718, 4017, 12866, 26831, 39268, 42211, 34221, 21184, 10015, 3571, 933, 169, 19, 1",
    "0, 1, 120, 2682, 25531, 138080, 490079, 1242533, 2375965, 3553184, 4258940, 4158866, 3342132, 2221444, \
     1221913, 554033, 205250, 61206, 14351, 2550, 323, 26, 1",
    "0, 1, 247, 9327, 141904, 1201179, 6629070, 26168817, 78440289, 185974145, 359010583, 576271053, \
     781064029, 903961423, 900492886, 776270805, 580939911, 377892743, 213530461, 104552833, 44163497, \
     15985154, 4910774, 1263620, 267378, 45321, 5918, 559, 34, 1",
];

fn row(table: &[&str; 8], n: usize) -> FVector {
    FVector::from_entries(
        table[n - 1]
            .split(',')
            .map(|s| s.trim().parse::<BigInt>().unwrap()),
    )
}

fn fv(p: &LaurentPoly) -> FVector {
    FVector::from_laurent(p).unwrap()
}

fn all_binary(max_n: usize) -> impl Iterator<Item = NetflowVector> {
    (1..=max_n).flat_map(NetflowVector::all_binary)
}

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Outcome {
    let spent = start.elapsed();
    ensure(spent <= limit, || {
        format!("took {spent:?}, limit {limit:?}")
    })
}

fn table_f() -> Outcome {
    let start = Instant::now();
    for n in 1..=8 {
        let expected = row(&TABLE_F, n);
        ensure(
            fv(&fpoly_main(&NetflowVector::cry(n)).unwrap()) == expected,
            || format!("fpoly_main n={n}"),
        )?;
        ensure(fv(&cry_fpoly(n).unwrap()) == expected, || {
            format!("cry_fpoly n={n}")
        })?;
    }
    // Third and eleventh entries of the rows, i.e. dimensions 1 and 9.
    ensure(cry_fpoly(8).unwrap().coeff(1) == BigInt::from(3670), || {
        "n=8 d=1".into()
    })?;
    ensure(
        cry_fpoly(7).unwrap().coeff(9) == BigInt::from(4386239),
        || "n=7 d=9".into(),
    )?;
    within(Duration::from_secs(5), start)
}

fn table_primitive() -> Outcome {
    let start = Instant::now();
    for n in 1..=8 {
        let expected = row(&TABLE_PRIMITIVE, n);
        ensure(
            fv(&primitive_fpoly(&NetflowVector::cry(n)).unwrap()) == expected,
            || format!("primitive_fpoly n={n}"),
        )?;
        ensure(fv(&cry_primitive_fpoly(n).unwrap()) == expected, || {
            format!("cry_primitive_fpoly n={n}")
        })?;
    }
    ensure(
        cry_primitive_fpoly(8).unwrap().coeff(9) == BigInt::from(359010583),
        || "n=8 d=9".into(),
    )?;
    within(Duration::from_secs(5), start)
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let cfg = OracleConfig::default();
    let mut count = 0;
    for a in all_binary(5) {
        let tally = oracle::enumerate(&a, &cfg).unwrap();
        ensure(tally.fvector() == fv(&fpoly_main(&a).unwrap()), || {
            format!("f {a}")
        })?;
        ensure(
            tally.primitive_fvector() == fv(&primitive_fpoly(&a).unwrap()),
            || format!("primitive {a}"),
        )?;
        count += 1;
    }
    ensure(count == 31, || format!("{count} netflows"))?;
    within(Duration::from_secs(60), start)?;
    let start = Instant::now();
    let a = NetflowVector::cry(6);
    let tally = oracle::enumerate(&a, &cfg).unwrap();
    ensure(tally.fvector() == row(&TABLE_F, 6), || "n=6 f".into())?;
    ensure(
        tally.primitive_fvector() == row(&TABLE_PRIMITIVE, 6),
        || "n=6 primitive".into(),
    )?;
    within(Duration::from_secs(600), start)
}

fn tesler() -> Outcome {
    for n in 1..=8 {
        let f = fpoly_main(&NetflowVector::all_ones(n)).unwrap() - LaurentPoly::monomial(-1, 1);
        ensure(f == q_factorial_shifted(n as u32), || format!("n={n}"))?;
    }
    Ok(())
}

fn route_independence() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for a in all_binary(8) {
        let p = primitive_fpoly(&a).unwrap();
        ensure(primitive_fpoly_subsets(&a).unwrap() == p, || {
            format!("primitive {a}")
        })?;
        ensure(
            fpoly_from_primitive(&a).unwrap() == fpoly_main(&a).unwrap(),
            || format!("f {a}"),
        )?;
        count += 1;
    }
    ensure(count == 255, || format!("{count} netflows"))?;
    within(Duration::from_secs(120), start)
}

fn product_identity() -> Outcome {
    for n in 2..=8 {
        ensure(product_identity_check(n).unwrap(), || {
            format!("corrected form n={n}")
        })?;
    }
    let (lhs, rhs) = product_identity_sides(3, ProductForm::Printed).unwrap();
    ensure(lhs == LaurentPoly::from_coeffs(0, [1, 4, 6, 4, 1]), || {
        format!("lhs {lhs}")
    })?;
    ensure(
        rhs == LaurentPoly::from_coeffs(0, [1, 6, 13, 13, 6, 1]),
        || format!("rhs {rhs}"),
    )?;
    ensure(lhs != rhs, || "printed form holds at n=3".into())
}

fn generating_functions() -> Outcome {
    let f = cry_face_series(8);
    let prim = primitive_polys_from_jelinek(8).unwrap();
    for n in 1..=8 {
        ensure(f.coeff(n) == cry_fpoly(n).unwrap(), || format!("F n={n}"))?;
        ensure(prim[n - 1] == cry_primitive_fpoly(n).unwrap(), || {
            format!("G n={n}")
        })?;
    }
    Ok(())
}

fn counts() -> Outcome {
    for n in 1..=8 {
        let t1 = row(&TABLE_F, n);
        ensure(cry_vertex_count(n).unwrap() == t1.get(0), || {
            format!("vertices n={n}")
        })?;
        if n >= 2 {
            ensure(cry_edge_count(n).unwrap() == t1.get(1), || {
                format!("edges n={n}")
            })?;
        }
    }
    let cfg = OracleConfig::default();
    for a in all_binary(5) {
        let tally = oracle::enumerate(&a, &cfg).unwrap();
        ensure(
            flow_vertex_count(&a) == BigInt::from(tally.all.get(0)),
            || format!("vertices {a}"),
        )?;
    }
    let a = NetflowVector::new(vec![true, true, false]).unwrap();
    ensure(flow_vertex_count(&a) == BigInt::from(6), || {
        "(1,1,0)".into()
    })?;
    for n in 2..=8 {
        let top = (n * (n - 1) / 2) as i64;
        for d in 1..n {
            let c = low_codim_face_count(n, d).unwrap();
            ensure(c == row(&TABLE_PRIMITIVE, n).get(top - d as i64), || {
                format!("primitive n={n} d={d}")
            })?;
            if d + 2 <= n {
                ensure(c == row(&TABLE_F, n).get(top - d as i64), || {
                    format!("f n={n} d={d}")
                })?;
            }
        }
    }
    Ok(())
}

fn helper_identity() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for size in 1..=6 {
        for alpha in compositions_of(size) {
            ensure(helper_identity_check(&alpha, 30).unwrap(), || {
                format!("{alpha}")
            })?;
            count += 1;
        }
    }
    ensure(count == 63, || format!("{count} compositions"))?;
    within(Duration::from_secs(30), start)
}

fn fishburn() -> Outcome {
    let cfg = OracleConfig::default();
    for n in 1..=4 {
        let graphs = oracle::valid_subgraphs(&NetflowVector::cry(n), true, &cfg).unwrap();
        let mut images = Vec::new();
        for h in &graphs {
            let m = graph_to_matrix(h).map_err(|e| e.to_string())?;
            ensure(&matrix_to_graph(&m) == h, || format!("roundtrip n={n}"))?;
            images.push(m);
        }
        images.sort();
        ensure(images == primitive_matrices(n, &cfg).unwrap(), || {
            format!("image n={n}")
        })?;
        ensure(
            BigInt::from(images.len()) == row(&TABLE_PRIMITIVE, n).total(),
            || format!("count n={n}"),
        )?;
    }
    let three = primitive_matrices(3, &cfg).unwrap().len();
    let four = primitive_matrices(4, &cfg).unwrap().len();
    ensure(three == 10 && four == 122, || {
        format!("counts {three}, {four}")
    })
}

fn binomial_relation() -> Outcome {
    for n in 1..=8 {
        let t1 = row(&TABLE_F, n);
        for d in 0..=t1.top_dimension() + 1 {
            ensure(cry_face_count_binomial(n, d).unwrap() == t1.get(d), || {
                format!("n={n} d={d}")
            })?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("Table of f-vectors, n <= 8", table_f),
        ("Table of primitive f-vectors, n <= 8", table_primitive),
        (
            "enumeration equals formulas, n <= 5, and CRY_6",
            oracle_equivalence,
        ),
        ("all-ones netflow gives [n]_{x+1}!", tesler),
        ("independent routes agree, 255 netflows", route_independence),
        (
            "product identity and printed counterexample",
            product_identity,
        ),
        ("generating functions F and G", generating_functions),
        ("closed-form counts", counts),
        ("helper identity, |alpha| <= 6", helper_identity),
        ("Fishburn bijection, n <= 4", fishburn),
        (
            "binomial relation between f and primitive f",
            binomial_relation,
        ),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let spent = start.elapsed();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({spent:.2?})", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
