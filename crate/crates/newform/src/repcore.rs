//! Local fields, essentially square-integrable representations, isobaric sums
//! and highest weights.
//!
//! A [`Repr`] is an ordered list of [`Component`]s over one [`LocalField`].
//! The text form is
//!
//! ```text
//! rep       := FIELD ':' component (';' component)*
//! FIELD     := 'R' | 'C'
//! component := 'chi^' SIGNED_INT 't=' COMPLEX | 'D^' INT 't=' COMPLEX
//! COMPLEX   := FLOAT | FLOAT SIGN FLOAT 'i' | FLOAT 'i'
//! ```
//!
//! ```
//! use newform::repcore::Repr;
//!
//! let rep: Repr = "R: D^3 t=0 ; chi^0 t=-0.2".parse().unwrap();
//! assert_eq!(rep.rank(), 3);
//! assert_eq!(rep.to_string(), "R: D^3 t=0 ; chi^0 t=-0.2");
//! ```

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LocalField {
    Real,
    Complex,
}

impl LocalField {
    /// `[F : R]`.
    pub fn degree(self) -> u32 {
        match self {
            LocalField::Real => 1,
            LocalField::Complex => 2,
        }
    }

    /// Maximal compact group kind of `GL_n(F)`.
    pub fn group(self) -> GroupKind {
        match self {
            LocalField::Real => GroupKind::Orthogonal,
            LocalField::Complex => GroupKind::Unitary,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            LocalField::Real => 'R',
            LocalField::Complex => 'C',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComponentKind {
    Character,
    DiscreteSeries,
}

/// `chi^kappa |.|^t` or, over R only, `D_kappa (x) |det|^t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Component {
    field: LocalField,
    kind: ComponentKind,
    kappa: i64,
    t: Complex64,
}

impl Component {
    pub fn character(field: LocalField, kappa: i64, t: Complex64) -> Result<Self> {
        if field == LocalField::Real && !(0..=1).contains(&kappa) {
            return Err(Error::Domain(format!("a character of R^x has kappa in {{0,1}}, got {kappa}")));
        }
        Ok(Self { field, kind: ComponentKind::Character, kappa, t })
    }

    pub fn discrete(field: LocalField, kappa: i64, t: Complex64) -> Result<Self> {
        if field != LocalField::Real {
            return Err(Error::Domain("discrete series exist only over R".into()));
        }
        if kappa < 2 {
            return Err(Error::Domain(format!("D_kappa needs kappa >= 2, got {kappa}")));
        }
        Ok(Self { field, kind: ComponentKind::DiscreteSeries, kappa, t })
    }

    pub fn field(&self) -> LocalField {
        self.field
    }
    pub fn kind(&self) -> ComponentKind {
        self.kind
    }
    pub fn kappa(&self) -> i64 {
        self.kappa
    }
    pub fn t(&self) -> Complex64 {
        self.t
    }
    pub fn is_character(&self) -> bool {
        self.kind == ComponentKind::Character
    }

    /// `n_j`.
    pub fn block_size(&self) -> usize {
        match self.kind {
            ComponentKind::Character => 1,
            ComponentKind::DiscreteSeries => 2,
        }
    }

    /// Conductor exponent of this component.
    pub fn conductor(&self) -> u64 {
        self.kappa.unsigned_abs()
    }

    pub fn with_t(&self, t: Complex64) -> Self {
        Self { t, ..*self }
    }

    pub fn contragredient(&self) -> Self {
        match (self.field, self.kind) {
            (LocalField::Complex, _) => Self { kappa: -self.kappa, t: -self.t, ..*self },
            _ => Self { t: -self.t, ..*self },
        }
    }
}

/// An isobaric sum `pi_1 [+] ... [+] pi_r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Repr {
    field: LocalField,
    components: Vec<Component>,
}

impl Repr {
    pub fn new(field: LocalField, components: Vec<Component>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Domain("a representation needs at least one component".into()));
        }
        if components.iter().any(|c| c.field != field) {
            return Err(Error::Domain("components over different fields".into()));
        }
        Ok(Self { field, components })
    }

    /// Spherical representation `|.|^{t_1} [+] ... [+] |.|^{t_n}`.
    pub fn spherical(field: LocalField, ts: &[Complex64]) -> Result<Self> {
        let comps = ts.iter().map(|&t| Component::character(field, 0, t)).collect::<Result<Vec<_>>>()?;
        Self::new(field, comps)
    }

    pub fn field(&self) -> LocalField {
        self.field
    }
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// `n = sum n_j`.
    pub fn rank(&self) -> usize {
        self.components.iter().map(Component::block_size).sum()
    }

    pub fn is_spherical(&self) -> bool {
        self.components.iter().all(|c| c.is_character() && c.kappa == 0)
    }

    /// `Re t_1 >= ... >= Re t_r`.
    pub fn is_langlands(&self) -> bool {
        self.components.windows(2).all(|w| w[0].t.re >= w[1].t.re)
    }

    /// Stable sort by descending `Re t`.
    pub fn canonicalize(&self) -> Repr {
        let mut components = self.components.clone();
        components.sort_by(|a, b| b.t.re.total_cmp(&a.t.re));
        Repr { field: self.field, components }
    }

    pub fn contragredient(&self) -> Repr {
        let components = self.components.iter().map(Component::contragredient).collect();
        Repr { field: self.field, components }.canonicalize()
    }

    /// Isobaric sum of two representations over the same field.
    pub fn concat(&self, other: &Repr) -> Result<Repr> {
        if self.field != other.field {
            return Err(Error::Mismatch("isobaric sum over different fields".into()));
        }
        let mut components = self.components.clone();
        components.extend_from_slice(&other.components);
        Ok(Repr { field: self.field, components })
    }

    /// Drop the first component.
    pub fn tail(&self) -> Option<Repr> {
        if self.components.len() < 2 {
            return None;
        }
        Some(Repr { field: self.field, components: self.components[1..].to_vec() })
    }

    /// Starting index (0-based) of each block inside `1..=n`.
    pub fn block_offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.components.len());
        let mut at = 0;
        for c in &self.components {
            out.push(at);
            at += c.block_size();
        }
        out
    }
}

fn fmt_float(x: f64) -> String {
    format!("{x}")
}

/// Text form of a complex number in the descriptor grammar.
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        fmt_float(z.re)
    } else if z.re == 0.0 {
        format!("{}i", fmt_float(z.im))
    } else if z.im < 0.0 || (z.im == 0.0 && z.im.is_sign_negative()) {
        format!("{}-{}i", fmt_float(z.re), fmt_float(-z.im))
    } else {
        format!("{}+{}i", fmt_float(z.re), fmt_float(z.im))
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ComponentKind::Character => {
                write!(f, "chi^{} t={}", self.kappa, format_complex(self.t))
            }
            ComponentKind::DiscreteSeries => {
                write!(f, "D^{} t={}", self.kappa, format_complex(self.t))
            }
        }
    }
}

impl fmt::Display for Repr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.field.symbol())?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(" ; ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Repr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_descriptor(s)
    }
}

/// Parse a descriptor, reporting the byte offset of syntax errors.
pub fn parse_descriptor(text: &str) -> Result<Repr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.ws();
    let field = match p.peek() {
        Some(b'R') => LocalField::Real,
        Some(b'C') => LocalField::Complex,
        _ => return Err(p.err("expected field 'R' or 'C'")),
    };
    p.pos += 1;
    p.ws();
    p.expect(b':')?;
    let mut components = Vec::new();
    loop {
        p.ws();
        let start = p.pos;
        let comp = if p.eat_str("chi^") {
            let kappa = p.int(true)?;
            let t = p.t_value()?;
            Component::character(field, kappa, t)
        } else if p.eat_str("D^") {
            let kappa = p.int(false)?;
            let t = p.t_value()?;
            Component::discrete(field, kappa, t)
        } else {
            return Err(p.err("expected 'chi^' or 'D^'"));
        };
        components.push(comp.map_err(|e| match e {
            Error::Domain(m) => Error::Domain(format!("component at byte {start}: {m}")),
            other => other,
        })?);
        p.ws();
        match p.peek() {
            Some(b';') => p.pos += 1,
            None => break,
            _ => return Err(p.err("expected ';' or end of input")),
        }
    }
    Repr::new(field, components)
}

/// Parse a complex number in the descriptor grammar: `0.3`, `-2i`,
/// `0.1+0.5i`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.ws();
    let z = p.complex()?;
    p.ws();
    if p.peek().is_some() {
        return Err(p.err("trailing characters after number"));
    }
    Ok(z)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self, signed: bool) -> Result<i64> {
        self.ws();
        let start = self.pos;
        if signed && matches!(self.peek(), Some(b'-' | b'+')) {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        s.parse::<i64>().map_err(|_| Error::Syntax { pos: start, msg: "expected integer".into() })
    }

    fn t_value(&mut self) -> Result<Complex64> {
        self.ws();
        if !self.eat_str("t") {
            return Err(self.err("expected 't='"));
        }
        self.ws();
        self.expect(b'=')?;
        self.ws();
        self.complex()
    }

    fn float(&mut self) -> Result<f64> {
        let start = self.pos;
        if matches!(self.peek(), Some(b'-' | b'+')) {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == b'.') {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.err("expected number"));
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'-' | b'+')) {
                self.pos += 1;
            }
            let exp_start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            if self.pos == exp_start {
                self.pos = save;
            }
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        s.parse::<f64>().map_err(|_| Error::Syntax { pos: start, msg: format!("bad number '{s}'") })
    }

    fn complex(&mut self) -> Result<Complex64> {
        let a = self.float()?;
        self.ws();
        match self.peek() {
            Some(b'i') => {
                self.pos += 1;
                Ok(Complex64::new(0.0, a))
            }
            Some(b'+' | b'-') => {
                let b = self.float()?;
                self.ws();
                self.expect(b'i')?;
                Ok(Complex64::new(a, b))
            }
            _ => Ok(Complex64::new(a, 0.0)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    Unitary,
    Orthogonal,
}

/// Highest weight of an irreducible representation of `U(n)` or `O(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HighestWeight {
    group: GroupKind,
    mu: Vec<i64>,
}

impl HighestWeight {
    pub fn new(group: GroupKind, mu: Vec<i64>) -> Result<Self> {
        if mu.is_empty() {
            return Err(Error::Domain("empty highest weight".into()));
        }
        let ok = match group {
            GroupKind::Unitary => mu.windows(2).all(|w| w[0] >= w[1]),
            GroupKind::Orthogonal => orthogonal_shape(&mu).is_some(),
        };
        if !ok {
            return Err(Error::Domain(format!("{mu:?} is not a highest weight for {group:?}")));
        }
        Ok(Self { group, mu })
    }

    pub fn unitary(mu: Vec<i64>) -> Result<Self> {
        Self::new(GroupKind::Unitary, mu)
    }

    pub fn orthogonal(mu: Vec<i64>) -> Result<Self> {
        Self::new(GroupKind::Orthogonal, mu)
    }

    /// `(p, 0, ..., 0)` of `O(n)`.
    pub fn single_row(n: usize, p: i64) -> Result<Self> {
        let mut mu = vec![0; n];
        mu[0] = p;
        Self::orthogonal(mu)
    }

    pub fn group(&self) -> GroupKind {
        self.group
    }
    pub fn entries(&self) -> &[i64] {
        &self.mu
    }
    pub fn n(&self) -> usize {
        self.mu.len()
    }

    /// `(m, eta)` of an orthogonal weight.
    pub fn orthogonal_shape(&self) -> Option<(usize, i64)> {
        match self.group {
            GroupKind::Orthogonal => orthogonal_shape(&self.mu),
            GroupKind::Unitary => None,
        }
    }

    /// True for `(p, 0, ..., 0)`.
    pub fn is_single_row(&self) -> bool {
        self.mu[1..].iter().all(|&x| x == 0)
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.mu.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// `mu = (mu_1..mu_m, eta x (n-2m), 0 x m)` with `mu_m >= 1`.
fn orthogonal_shape(mu: &[i64]) -> Option<(usize, i64)> {
    let n = mu.len();
    if mu.iter().any(|&x| x < 0) || mu.windows(2).any(|w| w[0] < w[1]) {
        return None;
    }
    let nonzero = mu.iter().filter(|&&x| x != 0).count();
    if 2 * nonzero <= n {
        return Some((nonzero, 0));
    }
    let m = n - nonzero;
    if mu[m..n - m].iter().all(|&x| x == 1) && (m == 0 || mu[m - 1] >= 1) {
        Some((m, 1))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parses_examples() {
        let r: Repr = "R: chi^1 t=0.5".parse().unwrap();
        assert_eq!(r.field(), LocalField::Real);
        assert_eq!(r.components()[0].kappa(), 1);
        assert_eq!(r.components()[0].t(), c(0.5, 0.0));

        let r: Repr = "C: chi^3 t=0 ; chi^-1 t=0".parse().unwrap();
        let k: Vec<_> = r.components().iter().map(|c| c.kappa()).collect();
        assert_eq!(k, vec![3, -1]);

        let r: Repr = "R: D^3 t=0 ; chi^0 t=-0.2".parse().unwrap();
        assert_eq!(r.rank(), 3);
        assert_eq!(r.components()[0].kind(), ComponentKind::DiscreteSeries);
        assert_eq!(r.components()[1].t(), c(-0.2, 0.0));
    }

    #[test]
    fn complex_forms() {
        let r: Repr = "C:chi^0 t=1+2i;chi^0 t=0.5-0.25i ; chi^1 t = -3i".parse().unwrap();
        let ts: Vec<_> = r.components().iter().map(|c| c.t()).collect();
        assert_eq!(ts, vec![c(1.0, 2.0), c(0.5, -0.25), c(0.0, -3.0)]);
        let r: Repr = "R: chi^0 t=1e-3+2e-1i".parse().unwrap();
        assert_eq!(r.components()[0].t(), c(1e-3, 0.2));
    }

    #[test]
    fn domain_errors() {
        assert!(matches!("R: chi^5 t=0".parse::<Repr>(), Err(Error::Domain(_))));
        assert!(matches!("C: D^3 t=0".parse::<Repr>(), Err(Error::Domain(_))));
        assert!(matches!("R: D^1 t=0".parse::<Repr>(), Err(Error::Domain(_))));
    }

    #[test]
    fn syntax_errors_report_position() {
        match "R: chi^1 s=0".parse::<Repr>() {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 9),
            other => panic!("{other:?}"),
        }
        assert!(matches!("Q: chi^0 t=0".parse::<Repr>(), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!("R: chi^0 t=0 ;".parse::<Repr>(), Err(Error::Syntax { .. })));
    }

    #[test]
    fn canonicalize_sorts_stably() {
        let r: Repr = "R: chi^0 t=-0.3 ; chi^1 t=0.3".parse().unwrap();
        let ts: Vec<_> = r.canonicalize().components().iter().map(|c| c.t().re).collect();
        assert_eq!(ts, vec![0.3, -0.3]);
        let r: Repr = "R: chi^0 t=0.1 ; chi^1 t=0.1+1i".parse().unwrap();
        assert_eq!(r.canonicalize(), r);
        assert!(r.is_langlands());
    }

    #[test]
    fn contragredient_examples() {
        let r: Repr = "C: chi^3 t=1+2i".parse().unwrap();
        let d = r.contragredient().components()[0];
        assert_eq!((d.kappa(), d.t()), (-3, c(-1.0, -2.0)));
        let r: Repr = "R: chi^1 t=0.5".parse().unwrap();
        let d = r.contragredient().components()[0];
        assert_eq!((d.kappa(), d.t()), (1, c(-0.5, 0.0)));
        let r: Repr = "R: D^4 t=0".parse().unwrap();
        assert_eq!(r.contragredient().components()[0].kappa(), 4);
    }

    #[test]
    fn orthogonal_weights() {
        for ok in [
            vec![0],
            vec![1],
            vec![3, 0],
            vec![1, 1],
            vec![0, 0],
            vec![2, 1, 0],
            vec![1, 1, 0],
            vec![2, 1, 1, 0],
            vec![1, 1, 1],
        ] {
            assert!(HighestWeight::orthogonal(ok.clone()).is_ok(), "{ok:?}");
        }
        for bad in [vec![2], vec![0, 1], vec![2, 2], vec![2, 2, 1], vec![2, 0, 1]] {
            assert!(HighestWeight::orthogonal(bad.clone()).is_err(), "{bad:?}");
        }
        let w = HighestWeight::orthogonal(vec![1, 1, 0, 0]).unwrap();
        assert_eq!(w.orthogonal_shape(), Some((2, 0)));
        let w = HighestWeight::orthogonal(vec![2, 1, 1, 0]).unwrap();
        assert_eq!(w.orthogonal_shape(), Some((1, 1)));
    }
}
