use std::sync::Arc;

use super::{parse_module, Comodule, ModuleExpr, Stream};
use crate::coordalg::Group;
use crate::error::{Error, Result};

/// A built module: finite, or a stream of finite truncations.
#[derive(Debug)]
pub enum Built {
    Finite(Comodule),
    Stream(Stream),
}

impl Built {
    pub fn finite(self) -> Option<Comodule> {
        match self {
            Built::Finite(c) => Some(c),
            Built::Stream(_) => None,
        }
    }

    pub fn stream(self) -> Option<Stream> {
        match self {
            Built::Stream(s) => Some(s),
            Built::Finite(_) => None,
        }
    }
}

/// Builds and validates the module described by `expr`.
pub fn build(expr: &ModuleExpr, group: &Arc<Group>) -> Result<Built> {
    if let ModuleExpr::Stream(kind) = expr {
        return Ok(Built::Stream(Stream::new(group.clone(), *kind)?));
    }
    let m = finite(expr, group)?;
    let report = m.validate();
    if !report.passed() {
        return Err(Error::Internal(format!(
            "constructed {expr} fails validation: {report}"
        )));
    }
    Ok(Built::Finite(m))
}

impl Built {
    /// Parses `text` for `group` and builds it.
    pub fn parse(text: &str, group: &Arc<Group>) -> Result<Built> {
        build(&parse_module(text, group)?, group)
    }
}

fn finite(expr: &ModuleExpr, g: &Arc<Group>) -> Result<Comodule> {
    Ok(match expr {
        ModuleExpr::Triv => Comodule::trivial(g.clone()),
        ModuleExpr::Natural => Comodule::natural(g.clone()),
        ModuleExpr::DetPow(s) => Comodule::det_power(g.clone(), *s)?,
        ModuleExpr::Regular(n) => Comodule::regular(g.clone(), *n),
        ModuleExpr::Tensor(a, b) => finite(a, g)?.tensor(&finite(b, g)?)?,
        ModuleExpr::Sum(a, b) => finite(a, g)?.direct_sum(&finite(b, g)?)?,
        ModuleExpr::Dual(a) => finite(a, g)?.dual()?,
        ModuleExpr::Twist(r, a) => finite(a, g)?.frobenius_twist(*r),
        ModuleExpr::Sym(n, a) => finite(a, g)?.symmetric_power(*n),
        ModuleExpr::Stream(k) => {
            return Err(Error::Parse {
                offset: 0,
                token: k.to_string(),
                message: "streams cannot be nested inside other constructors".into(),
            })
        }
    })
}
