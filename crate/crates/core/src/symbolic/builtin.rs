//! The built-in substitution families.

use super::alpha::{AlphaEntry, AlphaSequence, XY};
use super::alphabet::Alphabet;
use super::segment::Segment;
use super::system::{Item, RuleBlock, SubstitutionSystem};
use crate::error::{Error, Result};

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &["grigorchuk", "ghat", "galpha", "fibonacci", "dihedral"];

/// Looks up a built-in system; `galpha` needs an α sequence.
pub fn builtin(name: &str, alpha: Option<&AlphaSequence>) -> Result<SubstitutionSystem> {
    match name {
        "grigorchuk" => Ok(grigorchuk()),
        "ghat" => Ok(ghat()),
        "fibonacci" => Ok(fibonacci()),
        "dihedral" => Ok(dihedral()),
        "galpha" => {
            let alpha = alpha
                .ok_or_else(|| Error::InvalidAlpha("galpha needs an alpha sequence".into()))?;
            galpha(alpha)
        }
        other => Err(Error::UnknownSystem(other.to_string())),
    }
}

fn parse_all(alphabet: &Alphabet, texts: &[&str]) -> Vec<Segment> {
    texts
        .iter()
        .map(|t| Segment::parse(alphabet, t).expect("built-in segment literal"))
        .collect()
}

fn block(formulas: Vec<Vec<Item>>) -> RuleBlock {
    RuleBlock { formulas }
}

/// `I_{n+1} = I_n e_n I_n`, starting from a single vertex so that `I_1 = [a]`.
///
/// Connectors: `#0 = [a]` (step 0 only), then `[b,c]`, `[b,d]`, `[c,d]` for
/// steps `n ≡ 1, 2, 0 (mod 3)`.
pub fn grigorchuk() -> SubstitutionSystem {
    let alphabet = Alphabet::new(["a", "b", "c", "d"]).expect("static alphabet");
    let connectors = parse_all(&alphabet, &["[a]", "[b,c]", "[b,d]", "[c,d]"]);
    let rule = |c| block(vec![vec![Item::part(0), Item::conn(c), Item::part(0)]]);
    SubstitutionSystem::new(
        "grigorchuk",
        alphabet,
        vec!["I".into()],
        vec![Segment::point()],
        connectors,
        vec![rule(0), rule(1), rule(2), rule(3)],
        1,
    )
    .expect("grigorchuk system is well formed")
}

/// The six-generator system `a0, a1, a2, b, c, d`.
///
/// Generation 0 is two single vertices; step 0 lays down
/// `I_1 = [a2][b,c][a0]`, `J_1 = [a2][b,c][a1]`. For `n ≥ 1`,
/// `I_{n+1} = J_n e_n J_n⁻¹` and `J_{n+1} = J_n e_n I_n⁻¹` with
/// `e_n = [b,c], [b,d], [c,d]` for `n ≡ 0, 1, 2 (mod 3)`.
pub fn ghat() -> SubstitutionSystem {
    let alphabet = Alphabet::new(["a0", "a1", "a2", "b", "c", "d"]).expect("static alphabet");
    // #0..#2 cycle with n mod 3, #3..#5 are the singleton a-edges used at step 0
    let connectors = parse_all(&alphabet, &["[b,c]", "[b,d]", "[c,d]", "[a0]", "[a1]", "[a2]"]);
    let (i, j) = (0, 1);
    let seed = block(vec![
        vec![Item::part(j), Item::conn(5), Item::conn(0), Item::conn(3)],
        vec![Item::part(j), Item::conn(5), Item::conn(0), Item::conn(4)],
    ]);
    let step = |c| {
        block(vec![
            vec![Item::part(j), Item::conn(c), Item::part_rev(j)],
            vec![Item::part(j), Item::conn(c), Item::part_rev(i)],
        ])
    };
    SubstitutionSystem::new(
        "ghat",
        alphabet,
        vec!["I".into(), "J".into()],
        vec![Segment::point(), Segment::point()],
        connectors,
        vec![seed, step(1), step(2), step(0)],
        1,
    )
    .expect("ghat system is well formed")
}

/// Connector index for a step of the α family: `e_{(n mod 3) + 1}`.
pub fn galpha_connector(step: usize) -> usize {
    step % 3
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    a / gcd(a, b) * b
}

/// The α-parameterized family over `a0, a1, a2, x, y, b, c, d`.
///
/// `I_0 = [a0][a1]`, `J_0 = [a0][a2]`; every step sets `I_{n+1} = J_n e J_n⁻¹`,
/// and `J_{n+1}` is `J_n [x] I_n [y] I_n [y] J_n⁻¹` for σ or
/// `J_n e_1 I_n [t1] I_n [t2] … I_n [tm] J_n⁻¹` for a word `t1…tm`.
pub fn galpha(alpha: &AlphaSequence) -> Result<SubstitutionSystem> {
    let alphabet =
        Alphabet::new(["a0", "a1", "a2", "x", "y", "b", "c", "d"]).expect("static alphabet");
    // #0 = e1, #1 = e2, #2 = e3, #3 = [x], #4 = [y]
    let connectors = parse_all(&alphabet, &["[b,c]", "[b,d]", "[c,d]", "[x]", "[y]"]);
    let initial = parse_all(&alphabet, &["[a0][a1]", "[a0][a2]"]);
    let (i, j) = (0, 1);
    let letter = |t: XY| match t {
        XY::X => Item::conn(3),
        XY::Y => Item::conn(4),
    };
    let k = alpha.prefix().len();
    let count = k + lcm(alpha.tail().len(), 3);
    let blocks = (0..count)
        .map(|n| {
            let i_rule = vec![Item::part(j), Item::conn(galpha_connector(n)), Item::part_rev(j)];
            let j_rule = match alpha.entry(n) {
                AlphaEntry::Sigma => vec![
                    Item::part(j),
                    Item::conn(3),
                    Item::part(i),
                    Item::conn(4),
                    Item::part(i),
                    Item::conn(4),
                    Item::part_rev(j),
                ],
                AlphaEntry::Word(w) => {
                    let mut f = vec![Item::part(j), Item::conn(0)];
                    for &t in w {
                        f.push(Item::part(i));
                        f.push(letter(t));
                    }
                    f.push(Item::part_rev(j));
                    f
                }
            };
            block(vec![i_rule, j_rule])
        })
        .collect();
    SubstitutionSystem::new(
        format!("galpha[{alpha}]"),
        alphabet,
        vec!["I".into(), "J".into()],
        initial,
        connectors,
        blocks,
        k,
    )
}

/// Connector index used at step `n` of the Fibonacci-type system.
///
/// `n < 3` uses the three initial connectors; for `n = 3k + i` with `k > 0`
/// the connector is `[b_i,c_i]`, `[b_i,d_i]` or `[c_i,d_i]` by `k mod 3`.
pub fn fibonacci_connector(step: usize) -> usize {
    if step < 3 {
        step
    } else {
        3 + 3 * ((step / 3) % 3) + step % 3
    }
}

/// Two-step recursion `I_n = I_{n-2}⁻¹ e_{n-2} I_{n-1}⁻¹` over sixteen generators.
///
/// Generation `n` holds the pair `(P, Q) = (I_n, I_{n+1})`, so each step only
/// looks one generation back.
pub fn fibonacci() -> SubstitutionSystem {
    let mut names = Vec::new();
    for letter in ["a", "b", "c", "d"] {
        for i in 0..4 {
            names.push(format!("{letter}{i}"));
        }
    }
    let alphabet = Alphabet::new(names).expect("static alphabet");
    let mut texts: Vec<String> = (0..3).map(|i| format!("[a{i},b{i},c{i}]")).collect();
    for kmod in 0..3 {
        for i in 0..3 {
            texts.push(match kmod {
                0 => format!("[b{i},c{i}]"),
                1 => format!("[b{i},d{i}]"),
                _ => format!("[c{i},d{i}]"),
            });
        }
    }
    let connectors: Vec<Segment> = texts
        .iter()
        .map(|t| Segment::parse(&alphabet, t).expect("built-in connector"))
        .collect();
    let blocks = (0..12)
        .map(|n| {
            block(vec![
                vec![Item::part(1)],
                vec![Item::part_rev(0), Item::conn(fibonacci_connector(n)), Item::part_rev(1)],
            ])
        })
        .collect();
    SubstitutionSystem::new(
        "fibonacci",
        alphabet,
        vec!["P".into(), "Q".into()],
        vec![Segment::point(), Segment::point()],
        connectors,
        blocks,
        3,
    )
    .expect("fibonacci system is well formed")
}

/// `P_0 = [a][b]`, `P_{n+1} = P_n P_n`: the alternating sequence.
pub fn dihedral() -> SubstitutionSystem {
    let alphabet = Alphabet::new(["a", "b"]).expect("static alphabet");
    let initial = parse_all(&alphabet, &["[a][b]"]);
    SubstitutionSystem::new(
        "dihedral",
        alphabet,
        vec!["P".into()],
        initial,
        vec![],
        vec![block(vec![vec![Item::part(0), Item::part(0)]])],
        0,
    )
    .expect("dihedral system is well formed")
}
