use std::fmt;

use serde::Serialize;

use super::word::GroupWord;
use crate::error::Result;
use crate::exec::Exec;
use crate::graph::linear::step;
use crate::graph::WindowUniverse;
use crate::symbolic::SubstitutionSystem;

pub const DEFAULT_ORDER_CAP: u64 = 1 << 16;
/// Largest window (in label sets) the search may use.
pub const DEFAULT_RADIUS_BUDGET: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Order {
    Finite { order: u64 },
    Undetermined { bound: u64, reason: String },
}

impl Order {
    pub fn value(&self) -> Option<u64> {
        match self {
            Order::Finite { order } => Some(*order),
            Order::Undetermined { .. } => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite { order } => write!(f, "{order}"),
            Order::Undetermined { bound, reason } => write!(f, "undetermined: {reason} (bound {bound})"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct OrderOptions {
    pub cap: u64,
    pub budget: usize,
    pub exec: Exec,
}

impl Default for OrderOptions {
    fn default() -> Self {
        OrderOptions { cap: DEFAULT_ORDER_CAP, budget: DEFAULT_RADIUS_BUDGET, exec: Exec::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderReport {
    pub system: String,
    pub word: String,
    pub order: Order,
    /// Radius of the universe that settled the answer.
    pub radius: usize,
    pub generation: Option<usize>,
}

impl fmt::Display for OrderReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "order of {} in {}: {} (radius {})", self.word, self.system, self.order, self.radius)
    }
}

enum Orbit {
    Length(u64),
    Escaped,
    TooLong,
}

/// Length of the orbit of the center of `w` under `word`, if it stays inside.
fn orbit(w: &[crate::symbolic::LabelSet], word: &GroupWord, cap: u64) -> Orbit {
    let r = w.len() / 2;
    let mut p = r;
    let mut t = 0u64;
    loop {
        for &s in word.letters().iter().rev() {
            if p == 0 || p == w.len() {
                return Orbit::Escaped;
            }
            p = step(w, s, p);
        }
        t += 1;
        if p == r {
            return Orbit::Length(t);
        }
        if t >= cap {
            return Orbit::TooLong;
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Order of a word: the lcm of the orbit lengths of every window center.
///
/// A window only answers when the whole orbit stays inside it; otherwise the
/// radius doubles, up to the budget.
pub fn order(system: &SubstitutionSystem, word: &GroupWord, opts: OrderOptions) -> Result<OrderReport> {
    let text = word.to_text(system.alphabet());
    let mut radius = (2 * word.len()).max(4);
    loop {
        let universe = WindowUniverse::from_system(
            system,
            radius,
            crate::graph::window::DEFAULT_SPAN,
            crate::graph::window::DEFAULT_GENERATION_CAP,
            opts.exec,
        )?;
        let orbits = opts.exec.map_range(universe.len(), |i| orbit(universe.window(i), word, opts.cap));
        let mut lcm = 1u64;
        let mut escaped = false;
        let mut too_long = false;
        for o in orbits {
            match o {
                Orbit::Length(t) => {
                    lcm = lcm / gcd(lcm, t) * t;
                    if lcm > opts.cap {
                        too_long = true;
                    }
                }
                Orbit::Escaped => escaped = true,
                Orbit::TooLong => too_long = true,
            }
        }
        let report = |order| OrderReport {
            system: system.id().to_string(),
            word: text.clone(),
            order,
            radius,
            generation: universe.generation(),
        };
        if too_long {
            return Ok(report(Order::Undetermined {
                bound: opts.cap,
                reason: "order cap reached".into(),
            }));
        }
        if !escaped {
            return Ok(report(Order::Finite { order: lcm }));
        }
        if 4 * radius > opts.budget {
            return Ok(report(Order::Undetermined {
                bound: lcm,
                reason: format!("orbits leave windows of {} sets", 2 * radius),
            }));
        }
        radius *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::builtin::{dihedral, grigorchuk};

    #[test]
    fn grigorchuk_orders() {
        let g = grigorchuk();
        let w = |t: &str| GroupWord::parse(g.alphabet(), t).unwrap();
        let o = |t: &str| order(&g, &w(t), OrderOptions::default()).unwrap().order;
        assert_eq!(o("a"), Order::Finite { order: 2 });
        assert_eq!(order(&g, &GroupWord::identity(), OrderOptions::default()).unwrap().order, Order::Finite { order: 1 });
        assert_eq!(o("ad"), Order::Finite { order: 4 });
        assert_eq!(o("ac"), Order::Finite { order: 8 });
        assert_eq!(o("ab"), Order::Finite { order: 16 });
    }

    #[test]
    fn infinite_order_is_undetermined() {
        let d = dihedral();
        let ab = GroupWord::parse(d.alphabet(), "ab").unwrap();
        let r = order(&d, &ab, OrderOptions { cap: 64, budget: 256, exec: Exec::Sequential }).unwrap();
        assert!(r.order.value().is_none());
    }
}
