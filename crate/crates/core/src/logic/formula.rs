use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// A propositional variable.
///
/// Atoms compare by name, case-sensitively, in plain byte order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<str>);

impl Atom {
    /// Builds an atom, checking the identifier shape `[A-Za-z][A-Za-z0-9_]*`.
    pub fn new(name: &str) -> Result<Atom, super::ParseError> {
        if is_identifier(name) && !is_keyword(name) {
            Ok(Atom(Arc::from(name)))
        } else {
            Err(super::ParseError::invalid_atom(name))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub(crate) fn new_unchecked(name: &str) -> Atom {
        debug_assert!(is_identifier(name));
        Atom(Arc::from(name))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn is_keyword(s: &str) -> bool {
    s == "false" || s == "true"
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl serde::Serialize for Atom {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> serde::Deserialize<'de> for Atom {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Atom, D::Error> {
        let s = String::deserialize(d)?;
        Atom::new(&s).map_err(serde::de::Error::custom)
    }
}

/// A propositional formula.
///
/// `Display` produces the canonical rendering: minimal parentheses under the
/// precedence `! > & > | > ->`, `&`/`|` left-associative and `->`
/// right-associative, so that parsing the rendering gives back the same tree.
///
/// Formulas are totally ordered by their canonical rendering, shorter
/// renderings first and equal lengths compared bytewise. Every deterministic
/// choice in the crate (kernel shrinking, incision tie-breaks) uses this order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Falsum,
    True,
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(atom: &Atom) -> Formula {
        Formula::Atom(atom.clone())
    }

    /// Shorthand for an atom formula from a known-good identifier.
    ///
    /// Panics on a malformed name; use [`Atom::new`] for untrusted input.
    pub fn var(name: &str) -> Formula {
        Formula::Atom(Atom::new(name).expect("invalid atom name"))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    /// Conjunction of all formulas, `true` for an empty iterator.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(fs: I) -> Formula {
        let mut it = fs.into_iter();
        match it.next() {
            None => Formula::True,
            Some(first) => it.fold(first, Formula::and),
        }
    }

    /// The set of atoms occurring in the formula.
    pub fn vars(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Falsum | Formula::True => {}
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Not(f) => f.collect_vars(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    pub fn mentions(&self, atom: &Atom) -> bool {
        match self {
            Formula::Falsum | Formula::True => false,
            Formula::Atom(a) => a == atom,
            Formula::Not(f) => f.mentions(atom),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => l.mentions(atom) || r.mentions(atom),
        }
    }

    /// The atom if this formula is a bare atom.
    pub fn as_atom(&self) -> Option<&Atom> {
        match self {
            Formula::Atom(a) => Some(a),
            _ => None,
        }
    }

    /// Evaluates under an assignment; atoms the closure does not know are its problem.
    pub fn eval(&self, value: &impl Fn(&Atom) -> bool) -> bool {
        match self {
            Formula::Falsum => false,
            Formula::True => true,
            Formula::Atom(a) => value(a),
            Formula::Not(f) => !f.eval(value),
            Formula::And(l, r) => l.eval(value) && r.eval(value),
            Formula::Or(l, r) => l.eval(value) || r.eval(value),
            Formula::Implies(l, r) => !l.eval(value) || r.eval(value),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            _ => 4,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        if self.precedence() < min_prec {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Formula::Falsum => f.write_str("false"),
            Formula::True => f.write_str("true"),
            Formula::Atom(a) => f.write_str(a.name()),
            Formula::Not(inner) => {
                f.write_str("!")?;
                inner.write_at(f, 4)
            }
            Formula::And(l, r) => {
                l.write_at(f, 3)?;
                f.write_str(" & ")?;
                r.write_at(f, 4)
            }
            Formula::Or(l, r) => {
                l.write_at(f, 2)?;
                f.write_str(" | ")?;
                r.write_at(f, 3)
            }
            Formula::Implies(l, r) => {
                l.write_at(f, 2)?;
                f.write_str(" -> ")?;
                r.write_at(f, 1)
            }
        }
    }

    /// Canonical rendering; same as `to_string()`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl Ord for Formula {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let (a, b) = (self.to_string(), other.to_string());
        a.len().cmp(&b.len()).then_with(|| a.cmp(&b))
    }
}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Atom> for Formula {
    fn from(a: Atom) -> Formula {
        Formula::Atom(a)
    }
}

impl std::str::FromStr for Formula {
    type Err = super::ParseError;

    fn from_str(s: &str) -> Result<Formula, Self::Err> {
        super::parse_formula(s)
    }
}

impl serde::Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering_uses_minimal_parentheses() {
        let f = Formula::implies(
            Formula::and(Formula::and(Formula::var("A"), Formula::var("B")), Formula::var("okX")),
            Formula::var("D"),
        );
        assert_eq!(f.to_string(), "A & B & okX -> D");

        let g = Formula::and(Formula::var("a"), Formula::and(Formula::var("b"), Formula::var("c")));
        assert_eq!(g.to_string(), "a & (b & c)");

        let h = Formula::implies(
            Formula::implies(Formula::var("a"), Formula::var("b")),
            Formula::var("c"),
        );
        assert_eq!(h.to_string(), "(a -> b) -> c");

        let n = Formula::not(Formula::or(Formula::var("D"), Formula::var("E")));
        assert_eq!(n.to_string(), "!(D | E)");
    }

    #[test]
    fn vars_of_constants_is_empty() {
        assert!(Formula::Falsum.vars().is_empty());
        assert!(Formula::True.vars().is_empty());
    }

    #[test]
    fn canonical_order_is_shortlex() {
        let p = Formula::var("p");
        let np = Formula::not(p.clone());
        assert!(p < np);
        assert!(Formula::var("okY") < Formula::var("okZ"));
        assert!(Formula::var("okY") < Formula::var("okW8"));
    }

    #[test]
    fn atom_rejects_keywords_and_bad_shapes() {
        assert!(Atom::new("false").is_err());
        assert!(Atom::new("1x").is_err());
        assert!(Atom::new("").is_err());
        assert!(Atom::new("ok_X1").is_ok());
    }
}
