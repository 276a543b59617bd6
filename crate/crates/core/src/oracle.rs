//! Brute-force matrix groups over tiny fields and their `ell`-regular class
//! counts. Nothing here shares element encodings with the symbol engine.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::arith::{gcd, is_small_prime, prime_power, InstanceParams, Sign};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::symbols::{canonical_rep, enumerate_admissible_symbols, kappa};

pub const ORDER_CAP: u64 = 300_000;
const GENERATOR_BUDGET: usize = 20;

/// `F_{p^k}`, `k <= 2`. Elements are `a0 + a1 * p`, standing for `a0 + a1 x`.
#[derive(Clone, Debug)]
pub struct TinyField {
    p: u64,
    k: u32,
    size: usize,
    /// `x^2 + c1 x + c0`, stored as `[c0, c1]`.
    modulus: Option<[u64; 2]>,
    add: Vec<u8>,
    mul: Vec<u8>,
    inv: Vec<u8>,
}

impl TinyField {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn modulus(&self) -> Option<[u64; 2]> {
        self.modulus
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.size + b as usize]
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.size + b as usize]
    }

    pub fn neg(&self, a: u8) -> u8 {
        (0..self.size as u8)
            .find(|&b| self.add(a, b) == 0)
            .expect("additive inverse")
    }

    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: u8, e: u64) -> u8 {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }
}

/// Fixed moduli for the quadratic extensions.
fn quadratic_modulus(p: u64) -> Option<[u64; 2]> {
    match p {
        2 => Some([1, 1]),
        3 => Some([1, 0]),
        5 => Some([3, 0]),
        7 => Some([1, 0]),
        _ => None,
    }
}

pub fn build_field(p: u64, k: u32) -> Result<TinyField> {
    if !is_small_prime(p) || k == 0 || k > 2 || p.pow(k) > 49 {
        return Err(Error::Unsupported(format!("field of order {p}^{k}")));
    }
    let size = p.pow(k) as usize;
    let modulus = if k == 2 { quadratic_modulus(p) } else { None };
    if let Some([c0, c1]) = modulus {
        if (0..p).any(|x| (x * x + c1 * x + c0) % p == 0) {
            return Err(Error::InvariantViolation(format!(
                "modulus over F_{p} has a root"
            )));
        }
    }
    let split = |a: usize| ((a as u64) % p, (a as u64) / p);
    let join = |a0: u64, a1: u64| (a0 % p + (a1 % p) * p) as u8;
    let mut add = vec![0u8; size * size];
    let mut mul = vec![0u8; size * size];
    for a in 0..size {
        for b in 0..size {
            let (a0, a1) = split(a);
            let (b0, b1) = split(b);
            add[a * size + b] = join(a0 + b0, a1 + b1);
            mul[a * size + b] = match modulus {
                None => join(a0 * b0, 0),
                Some([c0, c1]) => {
                    let t = a1 * b1;
                    let lo = a0 * b0 + t * (p - c0) % p;
                    let hi = a0 * b1 + a1 * b0 + t * (p - c1) % p;
                    join(lo, hi)
                }
            };
        }
    }
    let mut inv = vec![0u8; size];
    for a in 1..size {
        inv[a] = (1..size)
            .find(|&b| mul[a * size + b] == 1)
            .ok_or_else(|| Error::InvariantViolation(format!("{a} has no inverse")))?
            as u8;
    }
    let f = TinyField {
        p,
        k,
        size,
        modulus,
        add,
        mul,
        inv,
    };
    check_field_axioms(&f)?;
    Ok(f)
}

fn check_field_axioms(f: &TinyField) -> Result<()> {
    let n = f.size as u8;
    for a in 0..n {
        if f.add(a, 0) != a || f.mul(a, 1) != a {
            return Err(Error::InvariantViolation("identity law fails".into()));
        }
        for b in 0..n {
            if f.add(a, b) != f.add(b, a) || f.mul(a, b) != f.mul(b, a) {
                return Err(Error::InvariantViolation("commutativity fails".into()));
            }
            for c in 0..n {
                let assoc = f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                    && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c));
                let distrib = f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
                if !assoc || !distrib {
                    return Err(Error::InvariantViolation("ring law fails".into()));
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    GL,
    SL,
    GU,
    SU,
}

impl GroupKind {
    pub fn is_unitary(self) -> bool {
        matches!(self, GroupKind::GU | GroupKind::SU)
    }

    pub fn is_special(self) -> bool {
        matches!(self, GroupKind::SL | GroupKind::SU)
    }

    pub fn sign(self) -> Sign {
        if self.is_unitary() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    /// The classical order formula.
    pub fn order(self, n: u32, q: u64) -> Option<u64> {
        let eps: i128 = if self.is_unitary() { -1 } else { 1 };
        let q = q as i128;
        let mut order = q.checked_pow(n * (n - 1) / 2)?;
        for i in 1..=n {
            order = order.checked_mul(q.checked_pow(i)? - eps.pow(i))?;
        }
        if self.is_special() {
            order /= q - eps;
        }
        u64::try_from(order).ok()
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupKind::GL => "GL",
            GroupKind::SL => "SL",
            GroupKind::GU => "GU",
            GroupKind::SU => "SU",
        };
        f.write_str(s)
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "GL" => Ok(GroupKind::GL),
            "SL" => Ok(GroupKind::SL),
            "GU" => Ok(GroupKind::GU),
            "SU" => Ok(GroupKind::SU),
            _ => Err(Error::Config(format!("unknown group kind {s:?}"))),
        }
    }
}

type Mat = [u8; 9];

/// An explicit matrix group; matrices are packed six bits per entry.
pub struct MatrixGroup {
    kind: GroupKind,
    n: usize,
    q: u64,
    field: TinyField,
    elements: Vec<u64>,
    index: HashMap<u64, u32>,
}

fn pack(m: &Mat, n: usize) -> u64 {
    (0..n * n).fold(0, |acc, i| acc | (m[i] as u64) << (6 * i))
}

fn unpack(x: u64, n: usize) -> Mat {
    let mut m = [0u8; 9];
    for (i, e) in m.iter_mut().enumerate().take(n * n) {
        *e = ((x >> (6 * i)) & 63) as u8;
    }
    m
}

fn mat_mul(f: &TinyField, n: usize, a: &Mat, b: &Mat) -> Mat {
    let mut c = [0u8; 9];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0;
            for k in 0..n {
                s = f.add(s, f.mul(a[i * n + k], b[k * n + j]));
            }
            c[i * n + j] = s;
        }
    }
    c
}

fn det(f: &TinyField, n: usize, m: &Mat) -> u8 {
    match n {
        1 => m[0],
        2 => f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2])),
        _ => {
            let minor = |a: usize, b: usize, c: usize, d: usize| {
                f.sub(f.mul(m[a], m[d]), f.mul(m[b], m[c]))
            };
            let t0 = f.mul(m[0], minor(4, 5, 7, 8));
            let t1 = f.mul(m[1], minor(3, 5, 6, 8));
            let t2 = f.mul(m[2], minor(3, 4, 6, 7));
            f.add(f.sub(t0, t1), t2)
        }
    }
}

fn identity(n: usize) -> Mat {
    let mut m = [0u8; 9];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

impl MatrixGroup {
    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn field(&self) -> &TinyField {
        &self.field
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn contains(&self, x: u64) -> bool {
        self.index.contains_key(&x)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        pack(
            &mat_mul(&self.field, self.n, &unpack(a, self.n), &unpack(b, self.n)),
            self.n,
        )
    }

    pub fn identity(&self) -> u64 {
        pack(&identity(self.n), self.n)
    }

    pub fn det(&self, a: u64) -> u8 {
        det(&self.field, self.n, &unpack(a, self.n))
    }

    pub fn element_order(&self, a: u64) -> u64 {
        let one = self.identity();
        let mut x = a;
        let mut k = 1;
        while x != one {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn inverse(&self, a: u64) -> u64 {
        let ord = self.element_order(a);
        (1..ord).fold(self.identity(), |acc, _| self.mul(acc, a))
    }

    fn from_elements(
        kind: GroupKind,
        n: usize,
        q: u64,
        field: TinyField,
        mut elements: Vec<u64>,
    ) -> Self {
        elements.sort_unstable();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, &x)| (x, i as u32))
            .collect();
        MatrixGroup {
            kind,
            n,
            q,
            field,
            elements,
            index,
        }
    }
}

/// Every vector of length `n` over `f`.
fn all_vectors(f: &TinyField, n: usize) -> Vec<[u8; 3]> {
    let mut out = Vec::new();
    let total = f.size.pow(n as u32);
    for mut code in 0..total {
        let mut v = [0u8; 3];
        for x in v.iter_mut().take(n) {
            *x = (code % f.size) as u8;
            code /= f.size;
        }
        out.push(v);
    }
    out
}

pub fn enumerate_group(kind: GroupKind, n: u32, q: u64) -> Result<MatrixGroup> {
    if n == 0 || n > 3 {
        return Err(Error::Unsupported(format!(
            "oracle rank {n}; supported ranks are 1..=3"
        )));
    }
    let (p, f) =
        prime_power(q).ok_or_else(|| Error::Config(format!("{q} is not a prime power")))?;
    let order = kind
        .order(n, q)
        .filter(|&o| o <= ORDER_CAP)
        .ok_or_else(|| {
            Error::Unsupported(format!("|{kind}_{n}({q})| exceeds the cap {ORDER_CAP}"))
        })?;
    let field_degree = if kind.is_unitary() { 2 * f } else { f };
    let field = build_field(p, field_degree)?;
    let nn = n as usize;
    let mut elements = Vec::with_capacity(order as usize);
    if kind.is_unitary() {
        let conj: Vec<u8> = (0..field.size as u8).map(|a| field.pow(a, q)).collect();
        let form = |u: &[u8; 3], v: &[u8; 3]| {
            (0..nn).fold(0, |s, i| field.add(s, field.mul(conj[u[i] as usize], v[i])))
        };
        let vecs = all_vectors(&field, nn);
        let unit: Vec<[u8; 3]> = vecs.iter().copied().filter(|v| form(v, v) == 1).collect();
        let mut cols: Vec<[u8; 3]> = Vec::with_capacity(nn);
        unitary_columns(&unit, &form, nn, &mut cols, &mut |cols| {
            let mut m = [0u8; 9];
            for (j, c) in cols.iter().enumerate() {
                for i in 0..nn {
                    m[i * nn + j] = c[i];
                }
            }
            if !kind.is_special() || det(&field, nn, &m) == 1 {
                elements.push(pack(&m, nn));
            }
        });
    } else {
        let total = (field.size as u64).pow(n * n);
        for mut code in 0..total {
            let mut m = [0u8; 9];
            for x in m.iter_mut().take(nn * nn) {
                *x = (code % field.size as u64) as u8;
                code /= field.size as u64;
            }
            let d = det(&field, nn, &m);
            if d != 0 && (!kind.is_special() || d == 1) {
                elements.push(pack(&m, nn));
            }
        }
    }
    if elements.len() as u64 != order {
        return Err(Error::InvariantViolation(format!(
            "enumerated {} elements of {kind}_{n}({q}), expected {order}",
            elements.len()
        )));
    }
    Ok(MatrixGroup::from_elements(kind, nn, q, field, elements))
}

fn unitary_columns(
    unit: &[[u8; 3]],
    form: &impl Fn(&[u8; 3], &[u8; 3]) -> u8,
    n: usize,
    cols: &mut Vec<[u8; 3]>,
    emit: &mut impl FnMut(&[[u8; 3]]),
) {
    if cols.len() == n {
        emit(cols);
        return;
    }
    for v in unit {
        if cols.iter().all(|c| form(c, v) == 0) {
            cols.push(*v);
            unitary_columns(unit, form, n, cols, emit);
            cols.pop();
        }
    }
}

/// A conjugacy class: a representative, its size and its element order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub rep: u64,
    pub size: u64,
    pub element_order: u64,
}

/// Greedy generating set: each pick lies outside the span of the previous
/// ones, so the span at least doubles every step.
pub fn generating_set(g: &MatrixGroup) -> Option<Vec<u64>> {
    let mut gens: Vec<u64> = Vec::new();
    let mut span = vec![false; g.elements.len()];
    span[g.index[&g.identity()] as usize] = true;
    let mut size = 1;
    let mut cursor = 0;
    while size < g.elements.len() {
        if gens.len() >= GENERATOR_BUDGET {
            return None;
        }
        while span[cursor] {
            cursor += 1;
        }
        gens.push(g.elements[cursor]);
        span.iter_mut().for_each(|s| *s = false);
        let mut queue = VecDeque::from([g.identity()]);
        span[g.index[&g.identity()] as usize] = true;
        size = 1;
        while let Some(x) = queue.pop_front() {
            for &s in &gens {
                let y = g.mul(x, s);
                let i = g.index[&y] as usize;
                if !span[i] {
                    span[i] = true;
                    size += 1;
                    queue.push_back(y);
                }
            }
        }
    }
    Some(gens)
}

pub fn conjugacy_classes(g: &MatrixGroup) -> Vec<ConjugacyClass> {
    let gens = generating_set(g).unwrap_or_else(|| g.elements.clone());
    let pairs: Vec<(u64, u64)> = gens.iter().map(|&s| (s, g.inverse(s))).collect();
    let mut seen = vec![false; g.elements.len()];
    let mut classes = Vec::new();
    for (i, &x) in g.elements.iter().enumerate() {
        if seen[i] {
            continue;
        }
        seen[i] = true;
        let mut size = 1;
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for &(s, s_inv) in &pairs {
                let z = g.mul(g.mul(s, y), s_inv);
                let j = g.index[&z] as usize;
                if !seen[j] {
                    seen[j] = true;
                    size += 1;
                    queue.push_back(z);
                }
            }
        }
        classes.push(ConjugacyClass {
            rep: x,
            size,
            element_order: g.element_order(x),
        });
    }
    classes
}

pub fn ell_regular_class_count(g: &MatrixGroup, ell: u64) -> u64 {
    conjugacy_classes(g)
        .iter()
        .filter(|c| gcd(c.element_order, ell) == 1)
        .count() as u64
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleRecord {
    pub group: String,
    pub order: u64,
    pub classes: u64,
    pub ell_regular: u64,
    pub engine_count: u64,
    pub pass: bool,
}

impl OracleRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group,
            "order": self.order,
            "classes": self.classes,
            "ell_regular": self.ell_regular,
            "engine_count": self.engine_count,
            "pass": self.pass,
        })
    }
}

/// The engine's Brauer character count for the group.
pub fn engine_count(kind: GroupKind, params: InstanceParams) -> Result<u64> {
    if kind.is_special() && (params.ell == 2 || params.ell_divides_sl_center()) {
        return Err(Error::Unsupported(format!(
            "{kind} comparison needs odd ell not dividing gcd(n, q-eps)"
        )));
    }
    let inst = Instance::new(params);
    let symbols = enumerate_admissible_symbols(&inst);
    if !kind.is_special() {
        return Ok(symbols.len() as u64);
    }
    Ok(symbols
        .iter()
        .filter(|s| canonical_rep(*s, &inst) == **s)
        .map(|s| kappa(s, &inst))
        .sum())
}

pub fn cross_check(kind: GroupKind, n: u32, q: u64, ell: u64) -> Result<OracleRecord> {
    let params = InstanceParams::new(n, q, kind.sign(), ell)?;
    let engine = engine_count(kind, params)?;
    let g = enumerate_group(kind, n, q)?;
    let classes = conjugacy_classes(&g);
    if classes.iter().map(|c| c.size).sum::<u64>() != g.order() {
        return Err(Error::InvariantViolation(
            "class sizes do not sum to the group order".into(),
        ));
    }
    let ell_regular = classes
        .iter()
        .filter(|c| gcd(c.element_order, ell) == 1)
        .count() as u64;
    Ok(OracleRecord {
        group: format!("{kind}_{n}({q})"),
        order: g.order(),
        classes: classes.len() as u64,
        ell_regular,
        engine_count: engine,
        pass: ell_regular == engine,
    })
}
