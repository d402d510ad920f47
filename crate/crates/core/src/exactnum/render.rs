//! Canonical text forms: rationals, `a+b√D`, `ζ_n^k`, and a coefficient
//! list fallback for anything else.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{CycNum, Rational};

pub fn render_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// If `x` is a root of unity, returns (n, k) with x = ζ_n^k, gcd(n, k) = 1.
pub fn as_root_of_unity(x: &CycNum) -> Option<(u32, u32)> {
    if x.is_zero() {
        return None;
    }
    let m = x.minimal_order();
    let n = if m.order() % 2 == 1 { 2 * m.order() } else { m.order() };
    for k in 0..n {
        let z = CycNum::root_of_unity(n, k as i64).ok()?;
        if z == m {
            let g = k.gcd(&n);
            return Some((n / g, k / g));
        }
    }
    None
}

/// If `x` = a + b√D with rational a, b, returns them.
pub fn as_real_quadratic(x: &CycNum, d: u32) -> Option<(Rational, Rational)> {
    if let Some(q) = x.as_rational() {
        return Some((q, Rational::zero()));
    }
    let root = CycNum::sqrt(d).ok()?;
    let order = (x.order() as u64).lcm(&(root.order() as u64));
    let order = u32::try_from(order).ok().filter(|&o| o <= super::MAX_ORDER)?;
    let xl = x.lift(order).ok()?;
    let rl = root.lift(order).ok()?;
    let sigma =
        (1..order as i64).find(|&j| j.gcd(&(order as i64)) == 1 && rl.galois(j).map(|g| g == -&rl).unwrap_or(false))?;
    let conj = xl.galois(sigma).ok()?;
    let half = Rational::new(1.into(), 2.into());
    let a = xl.checked_add(&conj).ok()?.scale(&half).as_rational()?;
    let b_root = xl.checked_sub(&conj).ok()?.scale(&half);
    let b = b_root.checked_mul(&rl).ok()?.scale(&Rational::new(1.into(), (d as i64).into())).as_rational()?;
    let rebuilt = rl.scale(&b).checked_add(&CycNum::from_rational(1, &a).ok()?).ok()?;
    (rebuilt == *x).then_some((a, b))
}

fn render_quadratic(a: &Rational, b: &Rational, d: u32) -> String {
    let root = format!("√{d}");
    let mut s = String::new();
    if !a.is_zero() {
        s.push_str(&render_rational(a));
    }
    if b.is_zero() {
        if s.is_empty() {
            s.push('0');
        }
        return s;
    }
    let neg = b.is_negative();
    let mag = b.abs();
    if neg {
        s.push('-');
    } else if !s.is_empty() {
        s.push('+');
    }
    if !mag.numer().is_one() {
        s.push_str(&mag.numer().to_string());
    }
    s.push_str(&root);
    if !mag.denom().is_one() {
        s.push('/');
        s.push_str(&mag.denom().to_string());
    }
    s
}

fn render_real(x: &CycNum) -> Option<String> {
    if let Some(q) = x.as_rational() {
        return Some(render_rational(&q));
    }
    [3u32, 2, 5].iter().find_map(|&d| as_real_quadratic(x, d).map(|(a, b)| render_quadratic(&a, &b, d)))
}

fn render_root(n: u32, k: u32) -> String {
    match (n, k) {
        (1, _) => "1".into(),
        (2, _) => "-1".into(),
        (n, 1) => format!("ζ_{n}"),
        (n, k) => format!("ζ_{n}^{k}"),
    }
}

fn wrap(s: &str) -> String {
    if s.chars().skip(1).any(|c| c == '+' || c == '-') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

pub fn render(x: &CycNum) -> String {
    if let Some(s) = render_real(x) {
        return s;
    }
    if let Some((n, k)) = as_root_of_unity(x) {
        return render_root(n, k);
    }
    // re + im·ζ_4 with real quadratic parts
    if let Some(s) = render_gaussian(x) {
        return s;
    }
    let coeffs: Vec<String> = x.coeffs().iter().map(render_rational).collect();
    format!("[{}; {}]", x.order(), coeffs.join(", "))
}

fn render_gaussian(x: &CycNum) -> Option<String> {
    let i = CycNum::root_of_unity(4, 1).ok()?;
    let conj = x.conj();
    let half = Rational::new(1.into(), 2.into());
    let re = x.checked_add(&conj).ok()?.scale(&half);
    // (x − x̄)/(2i) = −i(x − x̄)/2
    let im = x.checked_sub(&conj).ok()?.checked_mul(&(-&i)).ok()?.scale(&half);
    let re_s = render_real(&re)?;
    let im_s = render_real(&im)?;
    let im_part = match im_s.as_str() {
        "1" => "ζ_4".to_string(),
        "-1" => "-ζ_4".to_string(),
        s => format!("{}ζ_4", wrap(s)),
    };
    if re.is_zero() {
        return Some(im_part);
    }
    if im_part.starts_with('-') {
        Some(format!("{re_s}{im_part}"))
    } else {
        Some(format!("{re_s}+{im_part}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_canonical_notation() {
        let d = CycNum::quadratic(3, 2, 3).unwrap();
        assert_eq!(render(&d), "3+2√3");
        assert_eq!(render(&CycNum::quadratic(1, 1, 2).unwrap()), "1+√2");
        assert_eq!(render(&CycNum::root_of_unity(4, 1).unwrap()), "ζ_4");
        assert_eq!(render(&CycNum::root_of_unity(36, 24).unwrap()), "ζ_3^2");
        assert_eq!(render(&CycNum::root_of_unity(2, 1).unwrap()), "-1");
        assert_eq!(render(&CycNum::from_int(7)), "7");
    }

    #[test]
    fn renders_gaussian_quadratics() {
        let d = CycNum::quadratic(3, 2, 3).unwrap();
        let i = CycNum::root_of_unity(4, 1).unwrap();
        let x = -(CycNum::one() + i.scale_int(2)) * d;
        assert_eq!(render(&x), "-3-2√3+(-6-4√3)ζ_4");
    }

    #[test]
    fn root_detection() {
        assert_eq!(as_root_of_unity(&CycNum::root_of_unity(24, 9).unwrap()), Some((8, 3)));
        assert_eq!(as_root_of_unity(&CycNum::from_int(2)), None);
        assert_eq!(as_root_of_unity(&-CycNum::root_of_unity(3, 1).unwrap()), Some((6, 5)));
    }
}
