use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::syntax::{horn_alchi_axiom, ABox, Axiom, Concept, FragmentTag, Role, TBox};

use super::el::DEFAULT_BUDGET;

pub const H_TOP: u32 = 0;
pub const H_BOT: u32 = 1;

/// Directed role: `2 * role + inverted`.
pub type DRole = u32;

pub fn inv(r: DRole) -> DRole {
    r ^ 1
}

/// A Horn-ALCHI TBox in normal form over interned names and roles.
#[derive(Debug, Clone)]
pub struct HornTBox {
    pub names: Vec<String>,
    name_id: HashMap<String, u32>,
    user: Vec<bool>,
    pub roles: Vec<String>,
    role_id: HashMap<String, u32>,
    conj: Vec<(Vec<u32>, u32)>,
    conj_by: Vec<Vec<usize>>,
    ex_rhs: Vec<Vec<(DRole, u32)>>,
    all_rhs: Vec<Vec<(DRole, u32)>>,
    ex_lhs: Vec<Vec<(DRole, u32)>>,
    role_sub: Vec<(DRole, DRole)>,
    sup: Vec<Vec<bool>>,
    neg_memo: HashMap<Concept, u32>,
    pos_memo: HashMap<Concept, u32>,
    fresh_count: usize,
    pub has_inverse: bool,
}

impl HornTBox {
    pub fn new(tbox: &TBox) -> Result<HornTBox> {
        let mut t = HornTBox {
            names: Vec::new(),
            name_id: HashMap::new(),
            user: Vec::new(),
            roles: Vec::new(),
            role_id: HashMap::new(),
            conj: Vec::new(),
            conj_by: Vec::new(),
            ex_rhs: Vec::new(),
            all_rhs: Vec::new(),
            ex_lhs: Vec::new(),
            role_sub: Vec::new(),
            sup: Vec::new(),
            neg_memo: HashMap::new(),
            pos_memo: HashMap::new(),
            fresh_count: 0,
            has_inverse: tbox.has_inverse(),
        };
        t.intern("Top", false);
        t.intern("Bot", false);
        let sig = tbox.sig();
        for n in &sig.concepts {
            t.intern(n, true);
        }
        for r in &sig.roles {
            t.role(r);
        }
        for a in &tbox.axioms {
            t.add_axiom(a)?;
        }
        t.close_roles();
        Ok(t)
    }

    fn intern(&mut self, n: &str, user: bool) -> u32 {
        if let Some(&i) = self.name_id.get(n) {
            return i;
        }
        let i = self.names.len() as u32;
        self.names.push(n.to_string());
        self.name_id.insert(n.to_string(), i);
        self.user.push(user);
        self.conj_by.push(Vec::new());
        self.ex_rhs.push(Vec::new());
        self.all_rhs.push(Vec::new());
        self.ex_lhs.push(Vec::new());
        i
    }

    fn fresh(&mut self) -> u32 {
        loop {
            let n = format!("_H{}", self.fresh_count);
            self.fresh_count += 1;
            if !self.name_id.contains_key(&n) {
                return self.intern(&n, false);
            }
        }
    }

    fn role(&mut self, n: &str) -> u32 {
        if let Some(&i) = self.role_id.get(n) {
            return i;
        }
        let i = self.roles.len() as u32;
        self.roles.push(n.to_string());
        self.role_id.insert(n.to_string(), i);
        i
    }

    pub fn drole(&mut self, r: &Role) -> DRole {
        2 * self.role(&r.name) + r.inverted as u32
    }

    pub fn drole_of(&self, name: &str, inverted: bool) -> Option<DRole> {
        self.role_id.get(name).map(|&i| 2 * i + inverted as u32)
    }

    pub fn role_of(&self, d: DRole) -> Role {
        Role { name: self.roles[(d / 2) as usize].clone(), inverted: d & 1 == 1 }
    }

    pub fn name_id(&self, n: &str) -> Option<u32> {
        self.name_id.get(n).copied()
    }

    pub fn is_user(&self, x: u32) -> bool {
        self.user[x as usize]
    }

    pub fn droles(&self) -> usize {
        2 * self.roles.len()
    }

    /// `ρ ⊑* σ` in the reflexive-transitive closure, inverses included.
    pub fn sub_role(&self, rho: DRole, sigma: DRole) -> bool {
        self.sup[rho as usize][sigma as usize]
    }

    pub fn supers(&self, rho: DRole) -> impl Iterator<Item = DRole> + '_ {
        self.sup[rho as usize].iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as DRole)
    }

    fn add_conj(&mut self, mut lhs: Vec<u32>, rhs: u32) {
        lhs.sort_unstable();
        lhs.dedup();
        if lhs.len() > 1 {
            lhs.retain(|&x| x != H_TOP);
        }
        if lhs.contains(&H_BOT) || lhs.contains(&rhs) {
            return;
        }
        let i = self.conj.len();
        for &x in &lhs {
            self.conj_by[x as usize].push(i);
        }
        self.conj.push((lhs, rhs));
    }

    fn neg_atom(&mut self, c: &Concept) -> Result<u32> {
        match c {
            Concept::Top => return Ok(H_TOP),
            Concept::Bot => return Ok(H_BOT),
            Concept::Name(n) => return Ok(self.intern(n, true)),
            _ => {}
        }
        if let Some(&x) = self.neg_memo.get(c) {
            return Ok(x);
        }
        let x = self.fresh();
        self.neg_memo.insert(c.clone(), x);
        self.neg_into(c, x)?;
        Ok(x)
    }

    fn neg_into(&mut self, c: &Concept, target: u32) -> Result<()> {
        match c {
            Concept::Bot => {}
            Concept::Top => self.add_conj(vec![H_TOP], target),
            Concept::Name(n) => {
                let a = self.intern(n, true);
                self.add_conj(vec![a], target);
            }
            Concept::And(xs) => {
                let atoms = xs.iter().map(|x| self.neg_atom(x)).collect::<Result<Vec<_>>>()?;
                self.add_conj(atoms, target);
            }
            Concept::Or(xs) => {
                for x in xs {
                    self.neg_into(x, target)?;
                }
            }
            Concept::Exists(r, f) => {
                let a = self.neg_atom(f)?;
                let rho = self.drole(r);
                self.ex_lhs[a as usize].push((rho, target));
            }
            Concept::Not(_) | Concept::Forall(..) => {
                return Err(Error::fragment(FragmentTag::HornALC, format!("{c} in negative position")));
            }
        }
        Ok(())
    }

    fn pos_atom(&mut self, d: &Concept) -> Result<u32> {
        match d {
            Concept::Top => return Ok(H_TOP),
            Concept::Bot => return Ok(H_BOT),
            Concept::Name(n) => return Ok(self.intern(n, true)),
            _ => {}
        }
        if let Some(&x) = self.pos_memo.get(d) {
            return Ok(x);
        }
        let x = self.fresh();
        self.pos_memo.insert(d.clone(), x);
        self.pos_from(x, d)?;
        Ok(x)
    }

    fn pos_from(&mut self, l: u32, d: &Concept) -> Result<()> {
        match d {
            Concept::Top => {}
            Concept::Bot => self.add_conj(vec![l], H_BOT),
            Concept::Name(n) => {
                let b = self.intern(n, true);
                self.add_conj(vec![l], b);
            }
            Concept::And(xs) => {
                for x in xs {
                    self.pos_from(l, x)?;
                }
            }
            Concept::Exists(r, f) => {
                let b = self.pos_atom(f)?;
                let rho = self.drole(r);
                if b != H_BOT {
                    self.ex_rhs[l as usize].push((rho, b));
                } else {
                    self.add_conj(vec![l], H_BOT);
                }
            }
            Concept::Forall(r, f) => {
                let b = self.pos_atom(f)?;
                let rho = self.drole(r);
                if b != H_TOP {
                    self.all_rhs[l as usize].push((rho, b));
                }
            }
            Concept::Not(c) => {
                let x = self.neg_atom(c)?;
                self.add_conj(vec![l, x], H_BOT);
            }
            Concept::Or(_) => {
                return Err(Error::fragment(FragmentTag::HornALC, format!("{d} in positive position")));
            }
        }
        Ok(())
    }

    pub fn add_axiom(&mut self, a: &Axiom) -> Result<()> {
        if let Err(e) = horn_alchi_axiom(a) {
            return Err(Error::fragment(FragmentTag::HornALC, format!("{a}: {e}")));
        }
        for a in a.expand() {
            match a {
                Axiom::RSub(r, s) => {
                    let (r, s) = (self.drole(&r), self.drole(&s));
                    self.role_sub.push((r, s));
                    self.role_sub.push((inv(r), inv(s)));
                }
                Axiom::Sub(c, d) => match (&c, &d) {
                    (Concept::Bot, _) | (_, Concept::Top) => {}
                    (Concept::Top | Concept::Name(_), _) => {
                        let l = self.neg_atom(&c)?;
                        self.pos_from(l, &d)?;
                    }
                    (_, Concept::Name(_) | Concept::Bot) => {
                        let t = self.pos_atom(&d)?;
                        self.neg_into(&c, t)?;
                    }
                    _ => {
                        let y = self.neg_atom(&c)?;
                        self.pos_from(y, &d)?;
                    }
                },
                Axiom::Equiv(..) => unreachable!(),
            }
        }
        Ok(())
    }

    /// Adds axioms after construction (used for hypothetical extensions).
    pub fn extend(&mut self, axioms: &[Axiom]) -> Result<()> {
        for a in axioms {
            if let Axiom::Sub(c, d) | Axiom::Equiv(c, d) = a {
                for n in c.sig().concepts.iter().chain(d.sig().concepts.iter()) {
                    if self.name_id(n).is_none() {
                        self.intern(n, !n.starts_with("_H"));
                    }
                }
            }
            self.add_axiom(a)?;
        }
        self.close_roles();
        Ok(())
    }

    fn close_roles(&mut self) {
        let n = self.droles();
        let mut sup = vec![vec![false; n]; n];
        let mut adj = vec![Vec::new(); n];
        for &(r, s) in &self.role_sub {
            adj[r as usize].push(s as usize);
        }
        for (start, row) in sup.iter_mut().enumerate() {
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                if row[x] {
                    continue;
                }
                row[x] = true;
                stack.extend(adj[x].iter().copied());
            }
        }
        self.sup = sup;
    }

    /// A name `X` with `X ⊑ c` for a Horn-positive concept `c`.
    pub fn pos_concept(&mut self, c: &Concept) -> Result<u32> {
        if !crate::syntax::horn_pos(c) {
            return Err(Error::fragment(FragmentTag::HornALC, format!("{c} is not Horn-positive")));
        }
        let roles = self.roles.len();
        let x = self.pos_atom(c)?;
        if self.roles.len() != roles || self.sup.len() != self.droles() {
            self.close_roles();
        }
        Ok(x)
    }

    /// Ensures a role name is known (ABox roles outside the TBox).
    pub(crate) fn ensure_role(&mut self, name: &str) -> u32 {
        let before = self.roles.len();
        let i = self.role(name);
        if self.roles.len() != before {
            self.close_roles();
        }
        i
    }

    pub(crate) fn ensure_name(&mut self, name: &str) -> u32 {
        self.intern(name, true)
    }
}

/// How anonymous witnesses are keyed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessMode {
    /// One witness per required filler name.
    El,
    /// One witness per required role.
    DlLite,
    /// One witness per saturated type.
    Horn,
}

#[derive(Debug, Clone, Default)]
pub struct Node {
    pub set: BTreeSet<u32>,
    pub init: Vec<u32>,
    pub children: Vec<(DRole, usize)>,
    pub abox: Vec<(DRole, usize)>,
    pub parents: Vec<usize>,
    pub key_role: Option<DRole>,
    pub key_filler: Option<u32>,
    pub ind: bool,
}

#[derive(Debug, Clone)]
pub struct Saturation {
    pub tb: HornTBox,
    pub mode: WitnessMode,
    pub nodes: Vec<Node>,
    pub individuals: Vec<String>,
    ctx_map: HashMap<(u64, Vec<u32>), usize>,
    queue: VecDeque<usize>,
    queued: Vec<bool>,
    cap: usize,
    budget: usize,
    steps: usize,
    pub inconsistent: bool,
}

impl Saturation {
    pub fn new(tb: HornTBox, abox: &ABox, mode: WitnessMode, cap: usize) -> Result<Saturation> {
        let mut tb = tb;
        for (r, _, _) in &abox.role_assertions {
            tb.ensure_role(r);
        }
        for (c, _) in &abox.concept_assertions {
            tb.ensure_name(c);
        }
        let individuals: Vec<String> = abox.individuals().into_iter().collect();
        let ind_id: HashMap<&str, usize> = individuals.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let mut s = Saturation {
            tb,
            mode,
            nodes: Vec::new(),
            individuals: individuals.clone(),
            ctx_map: HashMap::new(),
            queue: VecDeque::new(),
            queued: Vec::new(),
            cap,
            budget: DEFAULT_BUDGET,
            steps: 0,
            inconsistent: false,
        };
        for _ in &individuals {
            s.push_node(Node { set: BTreeSet::from([H_TOP]), ind: true, ..Node::default() });
        }
        for (c, a) in &abox.concept_assertions {
            let x = s.tb.name_id(c).unwrap();
            s.nodes[ind_id[a.as_str()]].set.insert(x);
        }
        for (r, a, b) in &abox.role_assertions {
            let rho = s.tb.drole_of(r, false).unwrap();
            let (a, b) = (ind_id[a.as_str()], ind_id[b.as_str()]);
            s.nodes[a].abox.push((rho, b));
            s.nodes[b].abox.push((inv(rho), a));
        }
        for n in &mut s.nodes {
            n.abox.sort_unstable();
            n.abox.dedup();
        }
        Ok(s)
    }

    fn push_node(&mut self, n: Node) -> usize {
        self.nodes.push(n);
        self.queued.push(true);
        self.queue.push_back(self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    fn enqueue(&mut self, n: usize) {
        if !self.queued[n] {
            self.queued[n] = true;
            self.queue.push_back(n);
        }
    }

    pub fn is_individual(&self, n: usize) -> bool {
        self.nodes[n].ind
    }

    /// Adds a hypothetical individual node.
    pub fn add_individual(&mut self, name: String) -> usize {
        self.individuals.push(name);
        self.push_node(Node { set: BTreeSet::from([H_TOP]), ind: true, ..Node::default() })
    }

    /// Adds `ρ(x, y)` between two individual nodes.
    pub fn add_edge(&mut self, x: usize, rho: DRole, y: usize) {
        self.nodes[x].abox.push((rho, y));
        self.nodes[y].abox.push((inv(rho), x));
        self.enqueue(x);
        self.enqueue(y);
    }

    pub fn add_label(&mut self, x: usize, a: u32) {
        self.nodes[x].set.insert(a);
        self.enqueue(x);
    }

    /// Interns a Horn-positive concept as a name implying it; all nodes are
    /// re-examined since the TBox grew.
    pub fn intern_positive(&mut self, c: &Concept) -> Result<u32> {
        let x = self.tb.pos_concept(c)?;
        for n in 0..self.nodes.len() {
            self.enqueue(n);
        }
        Ok(x)
    }

    /// Names a `τ`-neighbour of `x` receives, for `τ(x, y)`.
    pub fn prop(&self, set: &BTreeSet<u32>, tau: DRole) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        for &a in set {
            for &(sigma, c) in &self.tb.all_rhs[a as usize] {
                if self.tb.sub_role(tau, sigma) {
                    out.insert(c);
                }
            }
            for &(sigma, d) in &self.tb.ex_lhs[a as usize] {
                if self.tb.sub_role(inv(tau), sigma) {
                    out.insert(d);
                }
            }
        }
        if set.contains(&H_BOT) {
            out.insert(H_BOT);
        }
        out
    }

    fn close_local(&mut self, n: usize) -> Result<()> {
        let mut todo: Vec<u32> = self.nodes[n].set.iter().copied().collect();
        while let Some(a) = todo.pop() {
            self.steps += 1;
            if self.steps > self.budget {
                return Err(Error::Resource { what: "Horn saturation steps".into(), cap: self.budget });
            }
            for &ci in &self.tb.conj_by[a as usize] {
                let (lhs, rhs) = &self.tb.conj[ci];
                let set = &self.nodes[n].set;
                if !set.contains(rhs) && lhs.iter().all(|x| set.contains(x)) {
                    let rhs = *rhs;
                    self.nodes[n].set.insert(rhs);
                    todo.push(rhs);
                }
            }
        }
        Ok(())
    }

    fn child(&mut self, parent: usize, rho: DRole, b: u32) -> Result<usize> {
        let mut init: BTreeSet<u32> = self.prop(&self.nodes[parent].set, rho);
        init.insert(b);
        init.insert(H_TOP);
        let init: Vec<u32> = init.into_iter().collect();
        let key = match self.mode {
            WitnessMode::El => 1 + b as u64,
            WitnessMode::DlLite => 1 + rho as u64,
            WitnessMode::Horn => 0,
        };
        let key = (key, init);
        if let Some(&c) = self.ctx_map.get(&key) {
            return Ok(c);
        }
        let anon = self.nodes.len() - self.individuals.len();
        if anon >= self.cap {
            return Err(Error::Resource { what: "witness elements".into(), cap: self.cap });
        }
        let set: BTreeSet<u32> = key.1.iter().copied().collect();
        let c = self.push_node(Node {
            set,
            init: key.1.clone(),
            key_role: Some(rho),
            key_filler: Some(b),
            ..Node::default()
        });
        self.ctx_map.insert(key, c);
        Ok(c)
    }

    fn process(&mut self, n: usize) -> Result<()> {
        let before = self.nodes[n].set.len();
        loop {
            let size = self.nodes[n].set.len();
            self.close_local(n)?;
            if self.nodes[n].set.contains(&H_BOT) {
                self.nodes[n].children.clear();
                if self.is_individual(n) {
                    self.inconsistent = true;
                }
            } else {
                let mut reqs: Vec<(DRole, u32)> = Vec::new();
                for &a in &self.nodes[n].set {
                    reqs.extend(self.tb.ex_rhs[a as usize].iter().copied());
                }
                reqs.sort_unstable();
                reqs.dedup();
                let mut children = Vec::with_capacity(reqs.len());
                for (rho, b) in reqs {
                    let c = self.child(n, rho, b)?;
                    if !self.nodes[c].parents.contains(&n) {
                        self.nodes[c].parents.push(n);
                    }
                    children.push((rho, c));
                }
                for &(rho, c) in &children {
                    let up = self.prop(&self.nodes[c].set, inv(rho));
                    self.nodes[n].set.extend(up);
                }
                self.nodes[n].children = children;
            }
            let abox = self.nodes[n].abox.clone();
            for (rho, m) in abox {
                let give = self.prop(&self.nodes[n].set, rho);
                let target = &mut self.nodes[m].set;
                let len = target.len();
                target.extend(give);
                if target.len() != len {
                    self.enqueue(m);
                }
            }
            if self.nodes[n].set.len() == size {
                break;
            }
        }
        if self.nodes[n].set.len() != before {
            for p in self.nodes[n].parents.clone() {
                self.enqueue(p);
            }
        }
        Ok(())
    }

    pub fn run(&mut self) -> Result<()> {
        while let Some(n) = self.queue.pop_front() {
            self.queued[n] = false;
            self.process(n)?;
        }
        Ok(())
    }

    /// Anonymous nodes reachable from the individuals along final children.
    pub fn reachable_witnesses(&self) -> Vec<usize> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack: Vec<usize> = (0..self.nodes.len()).filter(|&n| self.nodes[n].ind).collect();
        let mut out = Vec::new();
        while let Some(n) = stack.pop() {
            for &(_, c) in &self.nodes[n].children {
                if !seen[c] {
                    seen[c] = true;
                    out.push(c);
                    stack.push(c);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The type context `{⊤}` is unsatisfiable, i.e. `⊤ ⊑ ⊥` follows.
    pub fn top_unsat(&mut self) -> Result<bool> {
        let c = self.push_node(Node { set: BTreeSet::from([H_TOP]), init: vec![H_TOP], ..Node::default() });
        self.run()?;
        Ok(self.nodes[c].set.contains(&H_BOT))
    }

    pub fn user_labels(&self, n: usize) -> BTreeSet<String> {
        self.nodes[n].set.iter().filter(|&&a| a > H_BOT && self.tb.is_user(a)).map(|&a| self.tb.names[a as usize].clone()).collect()
    }
}

pub const DEFAULT_WITNESS_CAP: usize = 1 << 16;

pub fn saturate(tbox: &TBox, abox: &ABox, mode: WitnessMode, cap: usize) -> Result<Saturation> {
    let tb = HornTBox::new(tbox)?;
    let mut s = Saturation::new(tb, abox, mode, cap)?;
    s.run()?;
    if !s.inconsistent && abox.is_empty() && s.top_unsat()? {
        s.inconsistent = true;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_document;

    fn kb(s: &str) -> (TBox, ABox) {
        let d = parse_document(s).unwrap();
        (d.tbox, d.abox)
    }

    #[test]
    fn direct_clash() {
        let (t, a) = kb("(sub (and A B) Bot) (ca A c) (ca B c)");
        assert!(saturate(&t, &a, WitnessMode::Horn, 100).unwrap().inconsistent);
    }

    #[test]
    fn clash_through_forall() {
        let (t, a) = kb("(sub A (all r B)) (sub (and B C) Bot) (ca A a) (ra r a b) (ca C b)");
        assert!(saturate(&t, &a, WitnessMode::Horn, 100).unwrap().inconsistent);
        let (t, a) = kb("(sub A (all r B)) (sub (and B C) Bot) (ca A a) (ra r a b)");
        assert!(!saturate(&t, &a, WitnessMode::Horn, 100).unwrap().inconsistent);
    }

    #[test]
    fn clash_through_witness() {
        let (t, a) = kb("(sub A (some r B)) (sub B (all (inv r) C)) (sub (and A C) Bot) (ca A a)");
        assert!(saturate(&t, &a, WitnessMode::Horn, 100).unwrap().inconsistent);
    }

    #[test]
    fn role_hierarchy_inverse() {
        let (t, a) = kb("(rsub r s) (sub (some (inv s) Top) B) (ra r a b)");
        let s = saturate(&t, &a, WitnessMode::DlLite, 100).unwrap();
        assert!(s.user_labels(1).contains("B"));
        assert!(!s.user_labels(0).contains("B"));
    }

    #[test]
    fn witness_reuse() {
        let (t, a) = kb("(sub A (some r B)) (sub B (some r B)) (ca A a)");
        let s = saturate(&t, &a, WitnessMode::El, 100).unwrap();
        assert_eq!(s.reachable_witnesses().len(), 1);
    }

    #[test]
    fn cap_enforced() {
        let (t, a) = kb("(sub A (some r B)) (sub B (some r C)) (ca A a)");
        assert!(matches!(saturate(&t, &a, WitnessMode::El, 1), Err(Error::Resource { .. })));
    }

    #[test]
    fn top_bot_empty_abox() {
        let (t, a) = kb("(sub Top Bot)");
        assert!(saturate(&t, &a, WitnessMode::Horn, 10).unwrap().inconsistent);
    }
}
