//! Exact linear programs with their certificates, and convex hull membership.

use num_bigint::BigInt;
use statec::algebra::Rational;
use statec::lp::{audit, Certificate, member_convex_hull, solve_lp, HullMembership, LinearProgram, Relation};
use statec::state::format_vector;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn v(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| q(x, 1)).collect()
}

fn report(name: &str, lp: &LinearProgram) {
    let r = solve_lp(lp);
    println!("{name}: {:?}", r.status);
    if let (Some(x), Some(val)) = (&r.point, &r.value) {
        println!("  x = {}, value = {val}", format_vector(x));
    }
    match &r.certificate {
        Certificate::Dual(y) => println!("  dual multipliers {}", format_vector(y)),
        Certificate::Farkas(y) => println!("  Farkas multipliers {}", format_vector(y)),
        Certificate::Ray(d) => println!("  improving ray {}", format_vector(d)),
    }
    println!("  audit: {}", if audit(lp, &r).is_ok() { "passed" } else { "FAILED" });
}

fn main() -> statec::Result<()> {
    let bounded = LinearProgram::maximize(v(&[3, 2]))
        .constraint(v(&[1, 1]), Relation::Le, q(4, 1))
        .constraint(v(&[1, 3]), Relation::Le, q(6, 1))
        .constraint(v(&[2, -1]), Relation::Le, q(7, 2))
        .nonnegative();
    report("bounded", &bounded);

    let infeasible = LinearProgram::minimize(v(&[1, 1]))
        .constraint(v(&[1, 1]), Relation::Ge, q(3, 1))
        .constraint(v(&[1, 1]), Relation::Le, q(2, 1));
    report("infeasible", &infeasible);

    let unbounded = LinearProgram::maximize(v(&[1, -1])).constraint(v(&[-1, 1]), Relation::Le, q(1, 1)).nonnegative();
    report("unbounded", &unbounded);

    let square = vec![v(&[0, 0]), v(&[2, 0]), v(&[0, 2]), v(&[2, 2])];
    for p in [vec![q(1, 2), q(3, 2)], vec![q(5, 2), q(1, 1)]] {
        match member_convex_hull(&square, &p)? {
            HullMembership::Inside { lambda } => println!("{} = combination {}", format_vector(&p), format_vector(&lambda)),
            HullMembership::Outside { separator } => println!("{} separated by {}", format_vector(&p), format_vector(&separator)),
        }
    }
    Ok(())
}
