//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use kronrec::arith::{canonical_mod, mod_pow};
use kronrec::kronecker::{
    check_hypotheses, eval_substitution, extract_coeff, kron_decode, kron_encode, minimal_base,
};
use kronrec::roots::{
    conjecture_scan, convergence_scan, max_k_within_budget, Outcome, ScanConfig, Variant,
};
use kronrec::sequences::{
    binomial_oracle, central_binomial, oracle_term, pell, pell_binomial_sum, synth_formula_with,
};
use kronrec::term::eval_formula;
use kronrec::{
    BaseStrategy, CRecurrence, ExponentConvention, MonicModulus, Poly, SubstitutionParams,
};
use num_bigint::{BigInt, BigUint, RandBigInt};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pell_oracle(count: usize) -> Vec<BigInt> {
    let mut p = vec![int(0), int(1)];
    while p.len() < count {
        let next = int(2) * &p[p.len() - 1] + &p[p.len() - 2];
        p.push(next);
    }
    p
}

fn pascal_row(m: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..m {
        let mut next = vec![BigInt::one(); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row
}

fn pell_values() -> Check {
    let listed: [i64; 16] = [
        0, 1, 2, 5, 12, 29, 70, 169, 408, 985, 2378, 5741, 13860, 33461, 80782, 195025,
    ];
    let oracle = pell_oracle(301);
    for n in 1..=300u64 {
        let got = pell(n).map_err(|e| format!("n={n}: {e}"))?;
        if got != oracle[n as usize] {
            return Err(format!("n={n}: got {got}, oracle {}", oracle[n as usize]));
        }
    }
    // the listing is P_0..P_15; the closed form is undefined at n = 0
    if oracle[0] != int(listed[0]) {
        return Err(format!("P_0: oracle {}, listed {}", oracle[0], listed[0]));
    }
    for (n, &v) in listed.iter().enumerate().skip(1) {
        let got = pell(n as u64).map_err(|e| e.to_string())?;
        if got != int(v) {
            return Err(format!("n={n}: got {got}, listed {v}"));
        }
    }
    Ok("n=1..300 match the recurrence; listed P_0..P_15 match".into())
}

fn central_binomial_values() -> Check {
    let listed: [i64; 14] = [
        2, 6, 20, 70, 252, 924, 3432, 12870, 48620, 184756, 705432, 2704156, 10400600, 40116600,
    ];
    for n in 1..=150u64 {
        let got = central_binomial(n).map_err(|e| format!("n={n}: {e}"))?;
        let want = binomial_oracle(2 * n, n).map_err(|e| e.to_string())?;
        let row = pascal_row(2 * n as usize);
        if got != want || got != row[n as usize] {
            return Err(format!("n={n}: got {got}, oracle {want}"));
        }
    }
    for (i, &v) in listed.iter().take_while(|&&v| v <= 10_400_600).enumerate() {
        let n = i as u64 + 1;
        if central_binomial(n).map_err(|e| e.to_string())? != int(v) {
            return Err(format!("n={n}: listed {v} not reproduced"));
        }
    }
    Ok("n=1..150 match C(2n,n); listed values through 10400600 match".into())
}

fn binomial_sum_identity() -> Check {
    let oracle = pell_oracle(302);
    for n in 0..=300u64 {
        let got = pell_binomial_sum(n);
        if got != oracle[n as usize + 1] {
            return Err(format!(
                "n={n}: sum {got}, P_(n+1) {}",
                oracle[n as usize + 1]
            ));
        }
    }
    Ok("n=0..300".into())
}

fn alternating_sum_identity() -> Check {
    for n in 1..=60usize {
        let row = pascal_row(2 * n);
        let sum: BigInt = row
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if (k / (n + 1)) % 2 == 0 {
                    c.clone()
                } else {
                    -c
                }
            })
            .sum();
        if sum != row[n] {
            return Err(format!("n={n}: sum {sum}, C(2n,n) {}", row[n]));
        }
    }
    Ok("n=1..60".into())
}

fn random_poly(r: &mut ChaCha8Rng, min_degree: usize, max_degree: usize, lo: i64, hi: i64) -> Poly {
    loop {
        let d = r.gen_range(min_degree..=max_degree);
        let coeffs: Vec<i64> = (0..=d).map(|_| r.gen_range(lo..=hi)).collect();
        let p = Poly::from_i64s(&coeffs);
        if p.degree().unwrap_or(0) >= min_degree {
            return p;
        }
    }
}

/// Remainder of `p` by the monic `m` via schoolbook long division.
fn long_div_rem(p: &Poly, m: &Poly) -> Poly {
    let dm = m.degree().unwrap();
    let mut c: Vec<BigInt> = p.coeffs().to_vec();
    while c.len() > dm {
        let lead = c.pop().unwrap();
        let shift = c.len() - dm;
        for (i, mc) in m.coeffs()[..dm].iter().enumerate() {
            c[shift + i] -= &lead * mc;
        }
    }
    Poly::new(c)
}

fn substitution_fuzz() -> Check {
    let mut r = rng(0x5eed_0001);
    let mut accepted = 0;
    let mut drawn = 0u64;
    while accepted < 1000 {
        drawn += 1;
        if drawn > 1_000_000 {
            return Err(format!(
                "only {accepted} admissible instances in {drawn} draws"
            ));
        }
        let f = random_poly(&mut r, 1, 5, 0, 4);
        let d = r.gen_range(1..=5usize);
        let body = if d == 1 {
            Poly::constant(int(r.gen_range(-3..=3)))
        } else {
            random_poly(&mut r, 0, d - 1, -3, 3)
        };
        let m = MonicModulus::new(body, d).map_err(|e| e.to_string())?;
        let k = r.gen_range(d as u64..=d as u64 + 3);
        let gamma = int(r.gen_range(2..=1 << 12));
        let b = int(r.gen_range(1..=4));
        let params = SubstitutionParams::new(gamma, k, b.clone());
        if check_hypotheses(&f, &m, &params).is_err() {
            continue;
        }
        accepted += 1;

        let mut naive = Poly::one();
        for _ in 0..k {
            naive = &naive * &f;
        }
        let ring_side = long_div_rem(&naive, &m.to_poly()).eval_at(&b);
        let integer_side = eval_substitution(&f, &m, &params)
            .map_err(|e| format!("f={f}, m={}, {params:?}: {e}", m.to_poly()))?;
        if integer_side != ring_side {
            return Err(format!(
                "f={f}, m={}, {params:?}: integer {integer_side}, ring {ring_side}",
                m.to_poly()
            ));
        }
    }
    Ok(format!("{accepted} admissible instances ({drawn} drawn)"))
}

fn extraction_fuzz() -> Check {
    let mut r = rng(0x5eed_0002);
    for _ in 0..1000 {
        let f = random_poly(&mut r, 1, 8, 0, 99);
        // smallest positive b with f(b) > max coefficient
        let max = f.max_abs_coeff();
        let mut b = BigInt::one();
        while f.eval_at(&b) <= max {
            b += 1;
        }
        for k in 0..=f.degree().unwrap() {
            let got = extract_coeff(&f, k, &b).map_err(|e| format!("f={f}, k={k}: {e}"))?;
            if got != f.coeff(k) {
                return Err(format!("f={f}, k={k}, b={b}: got {got}"));
            }
        }
        if b > BigInt::one() && extract_coeff(&f, 0, &(&b - 1)).is_ok() {
            return Err(format!(
                "f={f}: b={} accepted below the minimal base",
                &b - 1
            ));
        }
    }
    Ok("1000 polynomials, every coefficient recovered at minimal b".into())
}

fn synthesis_equivalence() -> Check {
    let mut r = rng(0x5eed_0003);
    let mut cases = 0;
    while cases < 600 {
        let d = r.gen_range(1..=6usize);
        let coeffs: Vec<BigInt> = (0..d).map(|_| int(r.gen_range(0..=9))).collect();
        if coeffs.iter().all(Zero::is_zero) {
            continue;
        }
        let rec = CRecurrence::all_ones(coeffs).map_err(|e| e.to_string())?;
        let n = r.gen_range(1..=100u64);
        let want = oracle_term(&rec, n);
        for strategy in [BaseStrategy::OracleMinimal, BaseStrategy::AprioriBound] {
            let formula = synth_formula_with(&rec, n, strategy, ExponentConvention::N)
                .map_err(|e| format!("{rec}, n={n}, {strategy:?}: {e}"))?;
            let got = eval_formula(&formula.term).map_err(|e| e.to_string())?;
            if got != want {
                return Err(format!(
                    "{rec}, n={n}, {strategy:?}: got {got}, oracle {want}"
                ));
            }
        }
        cases += 1;
    }
    Ok(format!("{cases} sampled recurrences x 2 base strategies"))
}

/// Best unreduced error at budget 2000 and precision 30, smallest k on ties.
const ROOT_GOLDEN: [(u64, u32, u64, &str); 4] = [
    (2, 2, 214, "0.000000000000000000000000000001"),
    (5, 2, 214, "0.000000000000000000000000000000"),
    (2, 3, 37, "0.000000000000000000000000000000"),
    (10, 3, 48, "0.000000000000000000000000000000"),
];

fn root_convergence() -> Check {
    let budget = 2000;
    let mut summary = Vec::new();
    for (a, n, golden_k, golden_err) in ROOT_GOLDEN {
        let k_max = max_k_within_budget(n, budget).ok_or("budget admits no k")?;
        let mut cfg = ScanConfig::new(a, n, 2, k_max);
        cfg.digit_budget = budget;
        let records = convergence_scan(&cfg).map_err(|e| format!("({a},{n}): {e}"))?;
        let best = records
            .iter()
            .filter(|rec| rec.variant == Variant::Unreduced)
            .min_by(|x, y| x.error.abs().cmp(&y.error.abs()).then(x.k.cmp(&y.k)))
            .ok_or(format!("({a},{n}): empty scan"))?;
        let tolerance = kronrec::Rational::new(BigInt::one(), int(100));
        if best.error.abs() > tolerance {
            return Err(format!(
                "({a},{n}): best error {} exceeds 1e-2",
                best.error_decimal
            ));
        }
        if best.k != golden_k || best.error_decimal != golden_err {
            return Err(format!(
                "({a},{n}): best (k={}, {}) differs from golden (k={golden_k}, {golden_err})",
                best.k, best.error_decimal
            ));
        }
        summary.push(format!("({a},{n}) k={}", best.k));
    }
    Ok(format!("best error <= 1e-2 at {}", summary.join(", ")))
}

fn conjecture() -> Check {
    let report =
        conjecture_scan(30, kronrec::roots::DEFAULT_DIGIT_BUDGET).map_err(|e| e.to_string())?;
    let in_range: Vec<_> = report.records.iter().filter(|rec| rec.a >= 3).collect();
    let matches = in_range
        .iter()
        .filter(|rec| rec.outcome == Outcome::Match)
        .count();
    let skipped = in_range
        .iter()
        .filter(|rec| matches!(rec.outcome, Outcome::Skipped(_)))
        .count();
    if let Some(bad) = in_range.iter().find(|rec| rec.outcome == Outcome::Mismatch) {
        return Err(format!(
            "({}, {}): conjectured {:?}, expected {}",
            bad.a, bad.n, bad.conjectured, bad.expected
        ));
    }
    if skipped == in_range.len() - matches && (matches, skipped) == (86, 7) {
        Ok(format!(
            "{matches} pairs match, {skipped} perfect powers excluded"
        ))
    } else {
        Err(format!(
            "{matches} matches and {skipped} skips, expected 86 and 7"
        ))
    }
}

fn round_trip_and_residues() -> Check {
    let mut r = rng(0x5eed_0004);
    for _ in 0..10_000 {
        let f = random_poly(&mut r, 0, 12, 0, 1000);
        let base = minimal_base(&f) + int(r.gen_range(0..=5));
        let encoded = kron_encode(&f, &base).map_err(|e| e.to_string())?;
        let decoded = kron_decode(&encoded, &base).map_err(|e| e.to_string())?;
        if decoded != f {
            return Err(format!("{f} at base {base} decoded to {decoded}"));
        }
    }
    for _ in 0..10_000 {
        let v = r.gen_bigint(200);
        let m = loop {
            let bits = r.gen_range(2..120);
            let m = r.gen_bigint(bits);
            if !m.is_zero() {
                break m;
            }
        };
        let bits = r.gen_range(1..64);
        let e: BigUint = r.gen_biguint(bits);
        let bound = m.abs();
        for res in [canonical_mod(&v, &m), mod_pow(&v, &e, &m)] {
            if res.is_negative() || res >= bound {
                return Err(format!("residue {res} outside [0, {bound})"));
            }
        }
        if (&v - canonical_mod(&v, &m)) % &m != BigInt::zero() {
            return Err(format!("{v} mod {m} is not congruent to {v}"));
        }
    }
    Ok("10^4 encode/decode round trips; 10^4 residue checks".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("pell closed form", pell_values),
        ("central binomial closed form", central_binomial_values),
        ("pell binomial-sum identity", binomial_sum_identity),
        (
            "alternating binomial-sum identity",
            alternating_sum_identity,
        ),
        ("substitution fuzz", substitution_fuzz),
        ("coefficient extraction fuzz", extraction_fuzz),
        ("formula synthesis equivalence", synthesis_equivalence),
        ("root convergence", root_convergence),
        ("floor-root conjecture a <= 30", conjecture),
        ("round trip and canonical residues", round_trip_and_residues),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name} ({secs:.2}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name} ({secs:.2}s): {detail}");
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
