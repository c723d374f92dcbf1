//! Exponent vectors shared by parameter, coefficient and PBW monomials.
//!
//! Vectors are stored with trailing zeros trimmed so that the derived
//! lexicographic `Ord` on `Vec<u32>` coincides with lex order on the
//! zero-padded vectors, which is a monomial order.

/// Exponent vector with trailing zeros removed.
pub type Exponents = Vec<u32>;

pub fn trim(mut e: Exponents) -> Exponents {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

pub fn unit(i: usize) -> Exponents {
    let mut e = vec![0; i + 1];
    e[i] = 1;
    e
}

pub fn add(a: &[u32], b: &[u32]) -> Exponents {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

/// `a` divides `b` as monomials.
pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.len() <= b.len() && a.iter().zip(b).all(|(x, y)| x <= y)
}

/// `b - a`, assuming `divides(a, b)`.
pub fn sub(b: &[u32], a: &[u32]) -> Exponents {
    let mut out = b.to_vec();
    for (o, s) in out.iter_mut().zip(a) {
        *o -= s;
    }
    trim(out)
}

pub fn min(a: &[u32], b: &[u32]) -> Exponents {
    trim(a.iter().zip(b).map(|(x, y)| *x.min(y)).collect())
}

pub fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

pub fn get(e: &[u32], i: usize) -> u32 {
    e.get(i).copied().unwrap_or(0)
}

/// Index of the last nonzero entry.
pub fn last_var(e: &[u32]) -> Option<usize> {
    // trimmed vectors end in a nonzero entry
    if e.is_empty() {
        None
    } else {
        Some(e.len() - 1)
    }
}

pub fn decrement(e: &[u32], i: usize) -> Exponents {
    let mut out = e.to_vec();
    out[i] -= 1;
    trim(out)
}

pub fn increment(e: &[u32], i: usize) -> Exponents {
    let mut out = e.to_vec();
    if out.len() <= i {
        out.resize(i + 1, 0);
    }
    out[i] += 1;
    out
}

/// Display ordering: higher total degree first, then lex-descending.
pub fn display_cmp(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    degree(b).cmp(&degree(a)).then_with(|| b.cmp(a))
}

/// Render `v1^2*v3` style monomials; empty string for the unit monomial.
pub fn render(e: &[u32], names: &[String], sep: &str) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        let name = names.get(i).map(String::as_str).unwrap_or("?");
        if k == 1 {
            parts.push(name.to_string());
        } else {
            parts.push(format!("{name}^{k}"));
        }
    }
    parts.join(sep)
}

/// All exponent vectors over `nvars` variables with total degree `<= max_degree`,
/// enumerated by nested counting.
pub fn all_up_to(nvars: usize, max_degree: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fn rec(pos: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Exponents>) {
        if pos == current.len() {
            out.push(trim(current.clone()));
            return;
        }
        for k in 0..=left {
            current[pos] = k;
            rec(pos + 1, left - k, current, out);
        }
        current[pos] = 0;
    }
    rec(0, max_degree, &mut current, &mut out);
    out
}
