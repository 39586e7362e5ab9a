//! Operator table.

use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpType {
    Xfx,
    Xfy,
    Yfx,
    Fy,
    Fx,
    Xf,
    Yf,
}

impl OpType {
    pub fn parse(s: &str) -> Option<OpType> {
        Some(match s {
            "xfx" => OpType::Xfx,
            "xfy" => OpType::Xfy,
            "yfx" => OpType::Yfx,
            "fy" => OpType::Fy,
            "fx" => OpType::Fx,
            "xf" => OpType::Xf,
            "yf" => OpType::Yf,
            _ => return None,
        })
    }

    fn class(self) -> OpClass {
        match self {
            OpType::Xfx | OpType::Xfy | OpType::Yfx => OpClass::Infix,
            OpType::Fy | OpType::Fx => OpClass::Prefix,
            OpType::Xf | OpType::Yf => OpClass::Postfix,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum OpClass {
    Prefix,
    Infix,
    Postfix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OpDef {
    pub priority: u16,
    pub typ: OpType,
}

impl OpDef {
    /// Maximum priorities of the left and right operands.
    pub fn arg_max(&self) -> (u16, u16) {
        let p = self.priority;
        match self.typ {
            OpType::Xfx => (p - 1, p - 1),
            OpType::Xfy => (p - 1, p),
            OpType::Yfx => (p, p - 1),
            OpType::Fy => (0, p),
            OpType::Fx => (0, p - 1),
            OpType::Xf => (p - 1, 0),
            OpType::Yf => (p, 0),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct OpTable {
    prefix: HashMap<String, OpDef>,
    infix: HashMap<String, OpDef>,
    postfix: HashMap<String, OpDef>,
}

impl OpTable {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Adds (or with priority 0, removes) an operator definition.
    pub fn add(&mut self, priority: u16, typ: OpType, name: &str) {
        let table = match typ.class() {
            OpClass::Prefix => &mut self.prefix,
            OpClass::Infix => &mut self.infix,
            OpClass::Postfix => &mut self.postfix,
        };
        if priority == 0 {
            table.remove(name);
        } else {
            table.insert(name.to_string(), OpDef { priority, typ });
        }
    }

    pub fn prefix(&self, name: &str) -> Option<OpDef> {
        self.prefix.get(name).copied()
    }

    pub fn infix(&self, name: &str) -> Option<OpDef> {
        self.infix.get(name).copied()
    }

    pub fn postfix(&self, name: &str) -> Option<OpDef> {
        self.postfix.get(name).copied()
    }

    pub fn is_op(&self, name: &str) -> bool {
        self.prefix.contains_key(name) || self.infix.contains_key(name) || self.postfix.contains_key(name)
    }

    /// The standard table: ISO core operators.
    pub fn iso() -> Self {
        use OpType::*;
        let mut t = OpTable::empty();
        for (p, ty, names) in [
            (1200, Xfx, &[":-", "-->"][..]),
            (1200, Fx, &[":-", "?-"][..]),
            (1150, Fx, &["dynamic", "discontiguous", "initialization", "multifile"][..]),
            (1100, Xfy, &[";", "|"][..]),
            (1050, Xfy, &["->"][..]),
            (1000, Xfy, &[","][..]),
            (900, Fy, &["\\+"][..]),
            (
                700,
                Xfx,
                &[
                    "=", "\\=", "==", "\\==", "@<", "@>", "@=<", "@>=", "=..", "is", "=:=", "=\\=",
                    "<", ">", "=<", ">=",
                ][..],
            ),
            (500, Yfx, &["+", "-", "/\\", "\\/"][..]),
            (400, Yfx, &["*", "/", "//", "mod", "rem", "<<", ">>"][..]),
            (200, Xfx, &["**"][..]),
            (200, Xfy, &["^", ":"][..]),
            (200, Fy, &["-", "+", "\\"][..]),
        ] {
            for n in names {
                t.add(p, ty, n);
            }
        }
        t
    }

    /// ISO table plus the assertion operators used by foreign declarations
    /// (`pred` and `::`).
    pub fn with_assertions() -> Self {
        let mut t = Self::iso();
        t.add(1150, OpType::Fx, "pred");
        t.add(978, OpType::Xfx, "::");
        t
    }
}
