use blockweights::arith::*;

fn naive_order(b: u64, m: u64) -> u64 {
    let mut x = b % m;
    let mut t = 1;
    while x != 1 % m {
        x = x * (b % m) % m;
        t += 1;
    }
    t
}

fn totient(m: u64) -> u64 {
    (1..=m).filter(|&k| gcd(k, m) == 1).count() as u64
}

#[test]
fn e_gamma_closed_form() {
    for q in 2..=50u64 {
        let Some((p, _)) = prime_power(q) else {
            continue;
        };
        for ell in [2u64, 3, 5, 7, 11, 13] {
            if ell == p {
                continue;
            }
            for eps in [Sign::Plus, Sign::Minus] {
                let params = InstanceParams::new(1, q, eps, ell).unwrap();
                for d in 1..=12 {
                    assert_eq!(
                        e_gamma(d, &params),
                        params.e / gcd(params.e, d as u64),
                        "q={q} ell={ell} d={d}"
                    );
                }
            }
        }
    }
}

#[test]
fn e_against_e0() {
    for q in 2..=200u64 {
        let Some((p, _)) = prime_power(q) else {
            continue;
        };
        for ell in (3..=50u64).filter(|&l| is_small_prime(l) && l != p) {
            let e0 = e0_of(q, ell).unwrap();
            let plus = InstanceParams::new(1, q, Sign::Plus, ell).unwrap().e;
            let minus = InstanceParams::new(1, q, Sign::Minus, ell).unwrap().e;
            assert_eq!(plus, e0);
            let expected = if e0 % 2 == 1 {
                2 * e0
            } else if e0 % 4 == 2 {
                e0 / 2
            } else {
                e0
            };
            assert_eq!(minus, expected, "q={q} ell={ell}");
        }
    }
}

#[test]
fn orders_divide_the_unit_group() {
    for m in 1..=300u64 {
        let phi = totient(m);
        for b in 0..m {
            if gcd(b, m) != 1 {
                assert!(mult_order(b as i64, m).is_err() || m == 1);
                continue;
            }
            let t = mult_order(b as i64, m).unwrap();
            assert_eq!(t, naive_order(b, m));
            assert_eq!(phi % t, 0);
            assert_eq!(mult_order(b as i64 - m as i64, m).unwrap(), t);
        }
    }
}

#[test]
fn valuation_parts_multiply_back() {
    for x in 1..=2000u64 {
        for ell in [2u64, 3, 5, 7] {
            let (v, a, b) = ell_valuation_and_parts(x, ell);
            assert_eq!(a * b, x);
            assert_eq!(a, ell.pow(v));
            assert_ne!(b % ell, 0);
        }
    }
}

#[test]
fn overflow_guard() {
    assert!(matches!(
        InstanceParams::new(40, 9, Sign::Plus, 2),
        Err(blockweights::Error::Overflow(_))
    ));
    assert!(InstanceParams::new(8, 9, Sign::Minus, 2).is_ok());
}
