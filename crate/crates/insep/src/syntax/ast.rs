use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Role {
    pub name: String,
    pub inverted: bool,
}

impl Role {
    pub fn new(name: impl Into<String>) -> Role {
        Role { name: name.into(), inverted: false }
    }

    pub fn inv_of(name: impl Into<String>) -> Role {
        Role { name: name.into(), inverted: true }
    }

    pub fn inv(&self) -> Role {
        Role { name: self.name.clone(), inverted: !self.inverted }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverted {
            write!(f, "(inv {})", self.name)
        } else {
            f.write_str(&self.name)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Concept {
    Top,
    Bot,
    Name(String),
    Not(Box<Concept>),
    And(Vec<Concept>),
    Or(Vec<Concept>),
    Exists(Role, Box<Concept>),
    Forall(Role, Box<Concept>),
}

fn canonical_list(items: Vec<Concept>, and: bool) -> Vec<Concept> {
    let mut flat = Vec::with_capacity(items.len());
    for c in items {
        match c {
            Concept::And(xs) if and => flat.extend(xs),
            Concept::Or(xs) if !and => flat.extend(xs),
            c => flat.push(c),
        }
    }
    let mut keyed: Vec<(String, Concept)> = flat.into_iter().map(|c| (c.to_string(), c)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    keyed.into_iter().map(|(_, c)| c).collect()
}

impl Concept {
    pub fn name(n: impl Into<String>) -> Concept {
        Concept::Name(n.into())
    }

    /// Canonical conjunction: flattened, sorted by printed form, deduplicated.
    /// An empty list yields `Top`, a singleton yields its element.
    pub fn and(items: Vec<Concept>) -> Concept {
        let mut xs = canonical_list(items, true);
        match xs.len() {
            0 => Concept::Top,
            1 => xs.pop().unwrap(),
            _ => Concept::And(xs),
        }
    }

    /// Canonical disjunction; an empty list yields `Bot`.
    pub fn or(items: Vec<Concept>) -> Concept {
        let mut xs = canonical_list(items, false);
        match xs.len() {
            0 => Concept::Bot,
            1 => xs.pop().unwrap(),
            _ => Concept::Or(xs),
        }
    }

    pub fn not(c: Concept) -> Concept {
        Concept::Not(Box::new(c))
    }

    pub fn some(r: Role, c: Concept) -> Concept {
        Concept::Exists(r, Box::new(c))
    }

    pub fn all(r: Role, c: Concept) -> Concept {
        Concept::Forall(r, Box::new(c))
    }

    /// Number of nodes in the syntax tree, roles included.
    pub fn size(&self) -> usize {
        match self {
            Concept::Top | Concept::Bot | Concept::Name(_) => 1,
            Concept::Not(c) => 1 + c.size(),
            Concept::And(xs) | Concept::Or(xs) => xs.iter().map(Concept::size).sum::<usize>() + xs.len() - 1,
            Concept::Exists(_, c) | Concept::Forall(_, c) => 2 + c.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Concept::Top | Concept::Bot | Concept::Name(_) => 0,
            Concept::Not(c) => c.depth(),
            Concept::And(xs) | Concept::Or(xs) => xs.iter().map(Concept::depth).max().unwrap_or(0),
            Concept::Exists(_, c) | Concept::Forall(_, c) => 1 + c.depth(),
        }
    }

    pub fn collect_sig(&self, sig: &mut Signature) {
        match self {
            Concept::Top | Concept::Bot => {}
            Concept::Name(n) => {
                sig.concepts.insert(n.clone());
            }
            Concept::Not(c) => c.collect_sig(sig),
            Concept::And(xs) | Concept::Or(xs) => xs.iter().for_each(|c| c.collect_sig(sig)),
            Concept::Exists(r, c) | Concept::Forall(r, c) => {
                sig.roles.insert(r.name.clone());
                c.collect_sig(sig);
            }
        }
    }

    pub fn sig(&self) -> Signature {
        let mut s = Signature::default();
        self.collect_sig(&mut s);
        s
    }

    pub fn conjuncts(&self) -> Vec<&Concept> {
        match self {
            Concept::And(xs) => xs.iter().collect(),
            Concept::Top => Vec::new(),
            c => vec![c],
        }
    }

    pub fn has_inverse(&self) -> bool {
        match self {
            Concept::Top | Concept::Bot | Concept::Name(_) => false,
            Concept::Not(c) => c.has_inverse(),
            Concept::And(xs) | Concept::Or(xs) => xs.iter().any(Concept::has_inverse),
            Concept::Exists(r, c) | Concept::Forall(r, c) => r.inverted || c.has_inverse(),
        }
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Concept::Top => f.write_str("Top"),
            Concept::Bot => f.write_str("Bot"),
            Concept::Name(n) => f.write_str(n),
            Concept::Not(c) => write!(f, "(not {c})"),
            Concept::And(xs) | Concept::Or(xs) => {
                f.write_str(if matches!(self, Concept::And(_)) { "(and" } else { "(or" })?;
                for x in xs {
                    write!(f, " {x}")?;
                }
                f.write_str(")")
            }
            Concept::Exists(r, c) => write!(f, "(some {r} {c})"),
            Concept::Forall(r, c) => write!(f, "(all {r} {c})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Axiom {
    Sub(Concept, Concept),
    Equiv(Concept, Concept),
    RSub(Role, Role),
}

impl Axiom {
    pub fn sub(lhs: Concept, rhs: Concept) -> Axiom {
        Axiom::Sub(lhs, rhs)
    }

    /// Equivalences become two inclusions; everything else is returned as is.
    pub fn expand(&self) -> Vec<Axiom> {
        match self {
            Axiom::Equiv(c, d) => vec![Axiom::Sub(c.clone(), d.clone()), Axiom::Sub(d.clone(), c.clone())],
            a => vec![a.clone()],
        }
    }

    pub fn collect_sig(&self, sig: &mut Signature) {
        match self {
            Axiom::Sub(c, d) | Axiom::Equiv(c, d) => {
                c.collect_sig(sig);
                d.collect_sig(sig);
            }
            Axiom::RSub(r, s) => {
                sig.roles.insert(r.name.clone());
                sig.roles.insert(s.name.clone());
            }
        }
    }

    pub fn sig(&self) -> Signature {
        let mut s = Signature::default();
        self.collect_sig(&mut s);
        s
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::Sub(c, d) => write!(f, "(sub {c} {d})"),
            Axiom::Equiv(c, d) => write!(f, "(equiv {c} {d})"),
            Axiom::RSub(r, s) => write!(f, "(rsub {r} {s})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FragmentTag {
    EL,
    AcyclicEL,
    DLLiteCore,
    DLLiteCoreH,
    HornALC,
    ALCHI,
}

impl FragmentTag {
    pub const ALL: [FragmentTag; 6] = [
        FragmentTag::EL,
        FragmentTag::AcyclicEL,
        FragmentTag::DLLiteCore,
        FragmentTag::DLLiteCoreH,
        FragmentTag::HornALC,
        FragmentTag::ALCHI,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FragmentTag::EL => "EL",
            FragmentTag::AcyclicEL => "AcyclicEL",
            FragmentTag::DLLiteCore => "DLLiteCore",
            FragmentTag::DLLiteCoreH => "DLLiteCoreH",
            FragmentTag::HornALC => "HornALC",
            FragmentTag::ALCHI => "ALCHI",
        }
    }

    pub fn parse(s: &str) -> Option<FragmentTag> {
        FragmentTag::ALL.into_iter().find(|t| t.as_str().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for FragmentTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TBox {
    pub axioms: Vec<Axiom>,
    pub fragment: Option<FragmentTag>,
}

impl TBox {
    pub fn new(axioms: Vec<Axiom>) -> TBox {
        TBox { axioms, fragment: None }
    }

    pub fn sig(&self) -> Signature {
        let mut s = Signature::default();
        for a in &self.axioms {
            a.collect_sig(&mut s);
        }
        s
    }

    /// All axioms with equivalences expanded.
    pub fn expanded(&self) -> Vec<Axiom> {
        self.axioms.iter().flat_map(Axiom::expand).collect()
    }

    pub fn has_inverse(&self) -> bool {
        self.axioms.iter().any(|a| match a {
            Axiom::Sub(c, d) | Axiom::Equiv(c, d) => c.has_inverse() || d.has_inverse(),
            Axiom::RSub(r, s) => r.inverted || s.inverted,
        })
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }
}

impl fmt::Display for TBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.axioms {
            writeln!(f, "{a}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ABox {
    /// `(concept, individual)`
    pub concept_assertions: BTreeSet<(String, String)>,
    /// `(role, subject, object)`
    pub role_assertions: BTreeSet<(String, String, String)>,
}

impl ABox {
    pub fn add_concept(&mut self, a: impl Into<String>, ind: impl Into<String>) {
        self.concept_assertions.insert((a.into(), ind.into()));
    }

    pub fn add_role(&mut self, r: impl Into<String>, a: impl Into<String>, b: impl Into<String>) {
        self.role_assertions.insert((r.into(), a.into(), b.into()));
    }

    pub fn individuals(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for (_, a) in &self.concept_assertions {
            out.insert(a.clone());
        }
        for (_, a, b) in &self.role_assertions {
            out.insert(a.clone());
            out.insert(b.clone());
        }
        out
    }

    pub fn sig(&self) -> Signature {
        let mut s = Signature::default();
        s.concepts.extend(self.concept_assertions.iter().map(|(c, _)| c.clone()));
        s.roles.extend(self.role_assertions.iter().map(|(r, _, _)| r.clone()));
        s
    }

    pub fn len(&self) -> usize {
        self.concept_assertions.len() + self.role_assertions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for ABox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, a) in &self.concept_assertions {
            writeln!(f, "(ca {c} {a})")?;
        }
        for (r, a, b) in &self.role_assertions {
            writeln!(f, "(ra {r} {a} {b})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KB {
    pub tbox: TBox,
    pub abox: ABox,
}

impl KB {
    pub fn new(tbox: TBox, abox: ABox) -> KB {
        KB { tbox, abox }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub concepts: BTreeSet<String>,
    pub roles: BTreeSet<String>,
}

impl Signature {
    pub fn new<C, R>(concepts: C, roles: R) -> Signature
    where
        C: IntoIterator,
        C::Item: Into<String>,
        R: IntoIterator,
        R::Item: Into<String>,
    {
        Signature {
            concepts: concepts.into_iter().map(Into::into).collect(),
            roles: roles.into_iter().map(Into::into).collect(),
        }
    }

    pub fn has_concept(&self, n: &str) -> bool {
        self.concepts.contains(n)
    }

    pub fn has_role(&self, n: &str) -> bool {
        self.roles.contains(n)
    }

    pub fn union(&self, other: &Signature) -> Signature {
        Signature {
            concepts: self.concepts.union(&other.concepts).cloned().collect(),
            roles: self.roles.union(&other.roles).cloned().collect(),
        }
    }

    pub fn intersect(&self, other: &Signature) -> Signature {
        Signature {
            concepts: self.concepts.intersection(&other.concepts).cloned().collect(),
            roles: self.roles.intersection(&other.roles).cloned().collect(),
        }
    }

    pub fn is_subset(&self, other: &Signature) -> bool {
        self.concepts.is_subset(&other.concepts) && self.roles.is_subset(&other.roles)
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty() && self.roles.is_empty()
    }

    pub fn len(&self) -> usize {
        self.concepts.len() + self.roles.len()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<&str> = self.concepts.iter().map(String::as_str).collect();
        let rs: Vec<&str> = self.roles.iter().map(String::as_str).collect();
        write!(f, "concept:{};role:{}", cs.join(","), rs.join(","))
    }
}
