use num_bigint::BigInt;
use srstirling::stirling::identities::{check_all, Outcome};
use srstirling::stirling::oracle::{partition_counts, permutation_counts};
use srstirling::{Guards, IndexSet, Kind, SRContext};

const GRID: [&str; 8] = ["all", "odd", "even", "{1,2}", "{1,3,8}", "2..", "1..3", "mod 3"];

fn set(s: &str) -> IndexSet {
    s.parse().unwrap()
}

#[test]
fn egf_matches_partition_enumeration() {
    let guards = Guards::default();
    for name in GRID {
        for r in 0..=3 {
            let ctx = SRContext::new(set(name), r).unwrap();
            let rows = ctx.triangle(Kind::Second, 9).unwrap();
            for n in 0..=8usize {
                if n + r > guards.partitions {
                    continue;
                }
                let counts = partition_counts(ctx.set(), r, n, &guards).unwrap();
                assert_eq!(rows[n], counts, "S={name} r={r} n={n}");
            }
        }
    }
}

#[test]
fn egf_matches_permutation_enumeration() {
    let guards = Guards::default();
    for name in GRID {
        for r in 0..=3 {
            let ctx = SRContext::new(set(name), r).unwrap();
            let rows = ctx.triangle(Kind::First, 7).unwrap();
            for n in 0..=6usize {
                if n + r > guards.permutations {
                    continue;
                }
                let counts = permutation_counts(ctx.set(), r, n, &guards).unwrap();
                assert_eq!(rows[n], counts, "S={name} r={r} n={n}");
            }
        }
    }
}

#[test]
fn recurrences_hold_on_the_grid() {
    for name in GRID {
        for r in 0..=3 {
            for report in check_all(&set(name), r, 8).unwrap() {
                if let Outcome::Fails(f) = &report.outcome {
                    panic!("{f}");
                }
            }
        }
    }
}

#[test]
fn bell_row_sums_agree_with_bell_egf() {
    for name in GRID {
        for r in 0..=3 {
            let ctx = SRContext::new(set(name), r).unwrap();
            let seq = ctx.bell_sequence(10).unwrap();
            for (n, b) in seq.iter().enumerate() {
                assert_eq!(&ctx.bell(n).unwrap(), b);
            }
        }
    }
}

#[test]
fn factorial_polynomial_at_one_counts_permutations() {
    let ctx = SRContext::new(IndexSet::all(), 0).unwrap();
    let mut fact = BigInt::from(1);
    for n in 0..10usize {
        if n > 0 {
            fact *= n;
        }
        assert_eq!(ctx.factorial_polynomial(n).unwrap().eval(&BigInt::from(1)), fact);
    }
}

/// Coefficients of `exp(y E_S(x)) exp(z E_{S'}(x))` computed as a genuine
/// three-variable series, compared against the Bell polynomials.
#[test]
fn trivariate_generating_function() {
    use num_rational::BigRational;
    use num_traits::{One, Zero};
    const D: usize = 6;
    type Tri = Vec<Vec<Vec<BigRational>>>; // [x][y][z]
    let zero = || -> Tri { vec![vec![vec![BigRational::zero(); D]; D]; D] };
    let mul = |a: &Tri, b: &Tri| -> Tri {
        let mut out = zero();
        for i in 0..D {
            for j in 0..D {
                for k in 0..D {
                    if a[i][j][k].is_zero() {
                        continue;
                    }
                    for p in 0..D - i {
                        for q in 0..D - j {
                            for t in 0..D - k {
                                out[i + p][j + q][k + t] += &a[i][j][k] * &b[p][q][t];
                            }
                        }
                    }
                }
            }
        }
        out
    };
    let exp = |u: &Tri| -> Tri {
        let mut total = zero();
        total[0][0][0] = BigRational::one();
        let mut term = total.clone();
        for m in 1..3 * D {
            term = mul(&term, u);
            let scale = BigRational::new(1.into(), m.into());
            for plane in term.iter_mut() {
                for line in plane.iter_mut() {
                    for c in line.iter_mut() {
                        *c = &*c * &scale;
                    }
                }
            }
            for i in 0..D {
                for j in 0..D {
                    for k in 0..D {
                        total[i][j][k] += &term[i][j][k];
                    }
                }
            }
        }
        total
    };
    let fact = |n: usize| -> BigInt { (1..=n).map(BigInt::from).product() };
    for name in ["all", "odd", "{1,3,8}", "2.."] {
        let s = set(name);
        let mut ys = zero();
        let mut zs = zero();
        for e in s.elements_up_to(D as u64) {
            let e = e as usize;
            if e < D {
                ys[e][1][0] = BigRational::new(1.into(), fact(e));
            }
            zs[e - 1][0][1] = BigRational::new(1.into(), fact(e - 1));
        }
        let g = mul(&exp(&ys), &exp(&zs));
        for r in 0..D {
            let ctx = SRContext::new(s.clone(), r).unwrap();
            for n in 0..D {
                let poly = ctx.bell_polynomial(n).unwrap();
                for k in 0..D {
                    let scaled = &g[n][k][r] * BigRational::from_integer(fact(n) * fact(r));
                    assert!(scaled.is_integer());
                    assert_eq!(scaled.to_integer(), poly.coeff(k), "S={name} r={r} n={n} k={k}");
                }
                let at_one: BigInt = (0..D).map(|k| (&g[n][k][r] * BigRational::from_integer(fact(n) * fact(r))).to_integer()).sum();
                assert_eq!(at_one, ctx.bell(n).unwrap());
            }
        }
    }
}
