use std::collections::HashMap;
use std::fmt;
use std::sync::{LazyLock, RwLock};

/// Interned variable. Ids are handed out in registration order and never reused.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

struct Interner {
    names: Vec<String>,
    ids: HashMap<String, u32>,
}

static INTERNER: LazyLock<RwLock<Interner>> = LazyLock::new(|| {
    RwLock::new(Interner {
        names: Vec::new(),
        ids: HashMap::new(),
    })
});

impl Var {
    /// Id of `name`, registering it on first use.
    pub fn new(name: &str) -> Var {
        if let Some(v) = Var::lookup(name) {
            return v;
        }
        let mut t = INTERNER.write().unwrap();
        if let Some(&id) = t.ids.get(name) {
            return Var(id);
        }
        let id = t.names.len() as u32;
        t.names.push(name.to_string());
        t.ids.insert(name.to_string(), id);
        Var(id)
    }

    pub fn lookup(name: &str) -> Option<Var> {
        INTERNER.read().unwrap().ids.get(name).map(|&i| Var(i))
    }

    pub fn name(self) -> String {
        INTERNER.read().unwrap().names[self.0 as usize].clone()
    }

    pub fn id(self) -> u32 {
        self.0
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// The set of names an expression may mention.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarTable {
    vars: Vec<Var>,
}

impl VarTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_names<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut t = VarTable::new();
        for n in names {
            t.register(n.as_ref());
        }
        t
    }

    pub fn register(&mut self, name: &str) -> Var {
        let v = Var::new(name);
        if !self.vars.contains(&v) {
            self.vars.push(v);
        }
        v
    }

    pub fn get(&self, name: &str) -> Option<Var> {
        Var::lookup(name).filter(|v| self.vars.contains(v))
    }

    pub fn contains(&self, v: Var) -> bool {
        self.vars.contains(&v)
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn names(&self) -> Vec<String> {
        self.vars.iter().map(|v| v.name()).collect()
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn merge(&mut self, other: &VarTable) {
        for &v in &other.vars {
            if !self.vars.contains(&v) {
                self.vars.push(v);
            }
        }
    }
}
