//! Text surfaces for the binary: the line-based ring and subring definition
//! grammar, the witness block format, and name resolution over the builtin
//! catalog extended with file-defined entities.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use ringprob::catalog::{builtin_catalog, CatalogEntry};
use ringprob::commutator::{quotient_group, relative_center, AdditiveSubgroup, QuotientGroup};
use ringprob::isoclinism::{IsoclinismError, ZIsoclinismWitness};
use ringprob::ring::{build_ring, direct_product, Ring, RingError, RingRef, RingSpec};
use ringprob::subring::Subring;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: unknown ring {name:?}")]
    UnknownRingReference { line: usize, name: String },
    #[error("line {line}: {name:?} is already defined")]
    DuplicateName { line: usize, name: String },
    #[error("{name:?}: {source}")]
    Validation { name: String, source: RingError },
}

#[derive(Debug, Error)]
pub enum WitnessError {
    #[error(transparent)]
    File(#[from] FileError),
    #[error("invalid witness: {0}")]
    Shape(#[from] IsoclinismError),
}

/// A `subring <name> of <ring>` declaration, closed under the parent ring's
/// operations.
pub struct NamedSubring {
    pub name: String,
    pub ring_name: String,
    pub subring: Subring,
}

pub struct RingFile {
    pub rings: Vec<RingRef>,
    pub subrings: Vec<NamedSubring>,
}

impl std::fmt::Debug for RingFile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RingFile")
            .field(
                "rings",
                &self.rings.iter().map(|r| r.name()).collect::<Vec<_>>(),
            )
            .field(
                "subrings",
                &self
                    .subrings
                    .iter()
                    .map(|s| format!("{} of {}", s.name, s.ring_name))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> FileError {
    FileError::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

/// Comment-stripped, tokenized lines; blank lines dropped. Columns are
/// 1-based byte offsets.
fn scan_lines(text: &str) -> Vec<(usize, Vec<(usize, &str)>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let mut tokens = Vec::new();
            let mut rest = body;
            let mut offset = 0;
            loop {
                let trimmed = rest.trim_start();
                offset += rest.len() - trimmed.len();
                if trimmed.is_empty() {
                    break;
                }
                let end = trimmed
                    .find(char::is_whitespace)
                    .unwrap_or(trimmed.len());
                tokens.push((offset + 1, &trimmed[..end]));
                offset += end;
                rest = &trimmed[end..];
            }
            (!tokens.is_empty()).then_some((i + 1, tokens))
        })
        .collect()
}

fn parse_number<T: std::str::FromStr>(
    line: usize,
    (col, tok): (usize, &str),
    what: &str,
) -> Result<T, FileError> {
    tok.parse()
        .map_err(|_| syntax(line, col, format!("expected {what}, found {tok:?}")))
}

struct RingDraft {
    name: String,
    orders: Option<Vec<u32>>,
    muls: BTreeMap<(usize, usize), Vec<u32>>,
}

struct SubringDraft {
    name: String,
    ring_name: String,
    ring: RingRef,
    generators: Vec<usize>,
}

enum Block {
    Top,
    Ring(RingDraft),
    Subring(SubringDraft),
}

/// Parses the definition grammar. `context` supplies the rings and subring
/// names already taken (normally the builtin catalog, possibly extended by
/// previously loaded files); declarations in the file may reference context
/// rings and see each other top to bottom.
pub fn parse_ring_file(text: &str, context: &[CatalogEntry]) -> Result<RingFile, FileError> {
    let mut rings: Vec<RingRef> = Vec::new();
    let mut subrings: Vec<NamedSubring> = Vec::new();
    let mut block = Block::Top;
    let mut last_line = 0;

    for (line, tokens) in scan_lines(text) {
        last_line = line;
        let (head_col, head) = tokens[0];
        match &mut block {
            Block::Top => match head {
                "ring" => {
                    if tokens.len() != 2 {
                        return Err(syntax(line, head_col, "expected: ring <name>"));
                    }
                    let name = tokens[1].1;
                    let taken = context.iter().any(|e| e.name() == name)
                        || rings.iter().any(|r| r.name() == name);
                    if taken {
                        return Err(FileError::DuplicateName {
                            line,
                            name: name.into(),
                        });
                    }
                    block = Block::Ring(RingDraft {
                        name: name.into(),
                        orders: None,
                        muls: BTreeMap::new(),
                    });
                }
                "subring" => {
                    if tokens.len() != 4 || tokens[2].1 != "of" {
                        return Err(syntax(line, head_col, "expected: subring <name> of <ring>"));
                    }
                    let name = tokens[1].1;
                    let ring_name = tokens[3].1;
                    let ring = rings
                        .iter()
                        .find(|r| r.name() == ring_name)
                        .cloned()
                        .or_else(|| {
                            context
                                .iter()
                                .find(|e| e.name() == ring_name)
                                .map(|e| e.ring.clone())
                        })
                        .ok_or_else(|| FileError::UnknownRingReference {
                            line,
                            name: ring_name.into(),
                        })?;
                    let taken = name == "full"
                        || subrings
                            .iter()
                            .any(|s| s.ring_name == ring_name && s.name == name)
                        || context
                            .iter()
                            .filter(|e| e.name() == ring_name)
                            .any(|e| e.designated.iter().any(|(n, _)| n == name));
                    if taken {
                        return Err(FileError::DuplicateName {
                            line,
                            name: name.into(),
                        });
                    }
                    block = Block::Subring(SubringDraft {
                        name: name.into(),
                        ring_name: ring_name.into(),
                        ring,
                        generators: Vec::new(),
                    });
                }
                _ => return Err(syntax(line, head_col, "expected ring or subring")),
            },
            Block::Ring(draft) => match head {
                "orders" => {
                    if draft.orders.is_some() {
                        return Err(syntax(line, head_col, "orders given twice"));
                    }
                    if tokens.len() < 2 {
                        return Err(syntax(line, head_col, "expected: orders <n1> ... <nk>"));
                    }
                    let orders = tokens[1..]
                        .iter()
                        .map(|&t| parse_number(line, t, "a generator order"))
                        .collect::<Result<Vec<u32>, _>>()?;
                    draft.orders = Some(orders);
                }
                "mul" => {
                    let k = draft
                        .orders
                        .as_ref()
                        .ok_or_else(|| syntax(line, head_col, "orders must come before mul"))?
                        .len();
                    if tokens.len() != 4 + k || tokens[3].1 != ":" {
                        return Err(syntax(
                            line,
                            head_col,
                            format!("expected: mul <i> <j> : exactly {k} coefficients"),
                        ));
                    }
                    let i: usize = parse_number(line, tokens[1], "a generator index")?;
                    let j: usize = parse_number(line, tokens[2], "a generator index")?;
                    for (pos, idx) in [(tokens[1], i), (tokens[2], j)] {
                        if idx == 0 || idx > k {
                            return Err(syntax(
                                line,
                                pos.0,
                                format!("generator index {idx} out of range 1..={k}"),
                            ));
                        }
                    }
                    let coeffs = tokens[4..]
                        .iter()
                        .map(|&t| parse_number(line, t, "a coefficient"))
                        .collect::<Result<Vec<u32>, _>>()?;
                    if draft.muls.insert((i, j), coeffs).is_some() {
                        return Err(syntax(
                            line,
                            head_col,
                            format!("product of generators {i} and {j} given twice"),
                        ));
                    }
                }
                "end" => {
                    let draft = match std::mem::replace(&mut block, Block::Top) {
                        Block::Ring(d) => d,
                        _ => unreachable!(),
                    };
                    let orders = draft
                        .orders
                        .ok_or_else(|| syntax(line, head_col, "ring block has no orders line"))?;
                    let k = orders.len();
                    let mut constants = Vec::with_capacity(k * k);
                    for i in 1..=k {
                        for j in 1..=k {
                            let entry = draft.muls.get(&(i, j)).ok_or_else(|| {
                                syntax(
                                    line,
                                    head_col,
                                    format!("missing mul line for generators {i} {j}"),
                                )
                            })?;
                            constants.push(entry.clone());
                        }
                    }
                    let ring = build_ring(RingSpec {
                        name: draft.name.clone(),
                        orders,
                        constants,
                    })
                    .map_err(|source| FileError::Validation {
                        name: draft.name,
                        source,
                    })?;
                    rings.push(ring);
                }
                _ => return Err(syntax(line, head_col, "expected orders, mul or end")),
            },
            Block::Subring(draft) => match head {
                "gen" => {
                    let k = draft.ring.spec().orders.len();
                    if tokens.len() != 1 + k {
                        return Err(syntax(
                            line,
                            head_col,
                            format!("expected: gen with exactly {k} coefficients"),
                        ));
                    }
                    let coeffs = tokens[1..]
                        .iter()
                        .map(|&t| parse_number(line, t, "a coefficient"))
                        .collect::<Result<Vec<u32>, _>>()?;
                    let elem = draft.ring.element_from_coeffs(&coeffs).map_err(|source| {
                        FileError::Validation {
                            name: draft.name.clone(),
                            source,
                        }
                    })?;
                    draft.generators.push(elem.index);
                }
                "end" => {
                    let draft = match std::mem::replace(&mut block, Block::Top) {
                        Block::Subring(d) => d,
                        _ => unreachable!(),
                    };
                    let subring = Subring::closure_indices(&draft.ring, &draft.generators);
                    subrings.push(NamedSubring {
                        name: draft.name,
                        ring_name: draft.ring_name,
                        subring,
                    });
                }
                _ => return Err(syntax(line, head_col, "expected gen or end")),
            },
        }
    }
    if !matches!(block, Block::Top) {
        return Err(syntax(last_line, 1, "missing end"));
    }
    Ok(RingFile { rings, subrings })
}

/// Serializes a ring back into the definition grammar. Reparsing the result
/// reproduces the ring structurally.
pub fn ring_to_text(ring: &Ring) -> String {
    let spec = ring.spec();
    let k = spec.orders.len();
    let join = |nums: &[u32]| {
        nums.iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut out = String::new();
    writeln!(out, "ring {}", spec.name).unwrap();
    writeln!(out, "orders {}", join(&spec.orders)).unwrap();
    for i in 0..k {
        for j in 0..k {
            writeln!(
                out,
                "mul {} {} : {}",
                i + 1,
                j + 1,
                join(&spec.constants[i * k + j])
            )
            .unwrap();
        }
    }
    out.push_str("end\n");
    out
}

/// Splits a coefficient vector argument on whitespace and commas; `None` on
/// any non-numeric part.
pub fn parse_coeff_argument(text: &str) -> Option<Vec<u32>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().ok())
        .collect()
}

/// The builtin catalog plus everything loaded from files, with name lookup
/// for rings and subrings.
pub struct NameContext {
    entries: Vec<CatalogEntry>,
}

impl NameContext {
    pub fn builtin() -> NameContext {
        NameContext {
            entries: builtin_catalog(),
        }
    }

    /// Parses one definition file and adds its entities. Files loaded
    /// earlier act as context for later ones.
    pub fn add_file(&mut self, text: &str) -> Result<(), FileError> {
        let parsed = parse_ring_file(text, &self.entries)?;
        for ring in parsed.rings {
            self.entries.push(CatalogEntry {
                ring,
                designated: Vec::new(),
            });
        }
        for named in parsed.subrings {
            let entry = self
                .entries
                .iter_mut()
                .find(|e| e.name() == named.ring_name)
                .expect("parser resolved the parent ring");
            entry.designated.push((named.name, named.subring));
        }
        Ok(())
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<CatalogEntry> {
        self.entries
    }

    /// Looks a ring up by name. A name not present verbatim is tried as a
    /// direct product by splitting at each `x`, so `M2_Z2xZ3` resolves even
    /// though only its factors are listed.
    pub fn resolve_ring(&self, name: &str) -> Option<RingRef> {
        if let Some(entry) = self.entries.iter().find(|e| e.name() == name) {
            return Some(entry.ring.clone());
        }
        for (pos, _) in name.match_indices('x') {
            let (a, b) = (&name[..pos], &name[pos + 1..]);
            if let (Some(ra), Some(rb)) = (self.resolve_ring(a), self.resolve_ring(b)) {
                return Some(direct_product(&ra, &rb));
            }
        }
        None
    }

    /// Resolves a subring label within a ring: `full`, a designated catalog
    /// name, or a file-declared name.
    pub fn resolve_subring(&self, ring: &RingRef, label: &str) -> Option<Subring> {
        if label == "full" {
            return Some(Subring::full(ring));
        }
        self.entries
            .iter()
            .find(|e| e.name() == ring.name())
            .and_then(|e| e.designated_subring(label))
            .cloned()
    }
}

fn center_quotient(sub: &Subring) -> QuotientGroup {
    let center = relative_center(sub);
    let subgroup = AdditiveSubgroup::from_set(sub.ring(), center.members().clone())
        .expect("a relative center is an additive subgroup");
    quotient_group(subgroup)
}

/// Serializes a witness: the left side by name, the right subring by its
/// member list, alpha as coset-representative index pairs and beta as
/// element index pairs.
pub fn witness_to_text(w: &ZIsoclinismWitness, left_label: &str) -> String {
    let mut out = String::new();
    out.push_str("witness\n");
    writeln!(out, "left {} {}", w.s1().ring().name(), left_label).unwrap();
    writeln!(out, "right {}", w.s2().ring().name()).unwrap();
    let right = w.s2().ring();
    let join = |idx: usize| {
        right
            .element(idx)
            .coeffs
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    for x in w.s2().iter() {
        writeln!(out, "right-gen {}", join(x)).unwrap();
    }
    for ci in 0..w.q1().num_cosets() {
        writeln!(
            out,
            "alpha {} {}",
            w.q1().rep(ci),
            w.q2().rep(w.alpha[ci] as usize)
        )
        .unwrap();
    }
    for (l, r) in &w.beta {
        writeln!(out, "beta {l} {r}").unwrap();
    }
    out.push_str("end\n");
    out
}

/// Parses a witness block against the context. The block must name a left
/// ring and subring label, a right ring (member list following), then the
/// alpha and beta pairs; the assembled witness is shape-checked.
pub fn parse_witness(text: &str, ctx: &NameContext) -> Result<ZIsoclinismWitness, WitnessError> {
    #[derive(PartialEq, PartialOrd)]
    enum Phase {
        RightGen,
        Alpha,
        Beta,
        Done,
    }
    let lines = scan_lines(text);
    let mut iter = lines.into_iter();

    let expect_keyword = |got: Option<&(usize, Vec<(usize, &str)>)>,
                          want: &str,
                          arity: usize|
     -> Result<(usize, Vec<(usize, String)>), FileError> {
        match got {
            Some((line, tokens)) if tokens[0].1 == want && tokens.len() == arity => Ok((
                *line,
                tokens.iter().map(|&(c, t)| (c, t.to_string())).collect(),
            )),
            Some((line, tokens)) => Err(syntax(
                *line,
                tokens[0].0,
                format!("expected {want} with {} arguments", arity - 1),
            )),
            None => Err(syntax(0, 1, format!("expected {want}"))),
        }
    };

    let first = iter.next();
    expect_keyword(first.as_ref(), "witness", 1)?;
    let left = iter.next();
    let (left_line, left_tokens) = expect_keyword(left.as_ref(), "left", 3)?;
    let right = iter.next();
    let (right_line, right_tokens) = expect_keyword(right.as_ref(), "right", 2)?;

    let ring1 = ctx
        .resolve_ring(&left_tokens[1].1)
        .ok_or_else(|| FileError::UnknownRingReference {
            line: left_line,
            name: left_tokens[1].1.clone(),
        })?;
    let s1 = ctx
        .resolve_subring(&ring1, &left_tokens[2].1)
        .ok_or_else(|| {
            syntax(
                left_line,
                left_tokens[2].0,
                format!("unknown subring {:?} of {}", left_tokens[2].1, ring1.name()),
            )
        })?;
    let ring2 = ctx
        .resolve_ring(&right_tokens[1].1)
        .ok_or_else(|| FileError::UnknownRingReference {
            line: right_line,
            name: right_tokens[1].1.clone(),
        })?;

    let mut right_gens: Vec<usize> = Vec::new();
    let mut alpha_pairs: Vec<(usize, usize, usize)> = Vec::new();
    let mut beta = BTreeMap::new();
    let mut phase = Phase::RightGen;
    for (line, tokens) in iter {
        let (head_col, head) = tokens[0];
        let next_phase = match head {
            "right-gen" => Phase::RightGen,
            "alpha" => Phase::Alpha,
            "beta" => Phase::Beta,
            "end" => Phase::Done,
            _ => {
                return Err(syntax(
                    line,
                    head_col,
                    "expected right-gen, alpha, beta or end",
                )
                .into())
            }
        };
        if phase == Phase::Done {
            return Err(syntax(line, head_col, "content after end").into());
        }
        if next_phase < phase {
            return Err(syntax(line, head_col, format!("{head} line out of order")).into());
        }
        phase = next_phase;
        match head {
            "right-gen" => {
                let k = ring2.spec().orders.len();
                if tokens.len() != 1 + k {
                    return Err(syntax(
                        line,
                        head_col,
                        format!("expected: right-gen with exactly {k} coefficients"),
                    )
                    .into());
                }
                let coeffs = tokens[1..]
                    .iter()
                    .map(|&t| parse_number(line, t, "a coefficient"))
                    .collect::<Result<Vec<u32>, _>>()?;
                let elem = ring2.element_from_coeffs(&coeffs).map_err(|source| {
                    FileError::Validation {
                        name: ring2.name().to_string(),
                        source,
                    }
                })?;
                right_gens.push(elem.index);
            }
            "alpha" | "beta" => {
                if tokens.len() != 3 {
                    return Err(
                        syntax(line, head_col, format!("expected: {head} <from> <to>")).into(),
                    );
                }
                let from: usize = parse_number(line, tokens[1], "an element index")?;
                let to: usize = parse_number(line, tokens[2], "an element index")?;
                for (ring, (col, value)) in [(&ring1, (tokens[1].0, from)), (&ring2, (tokens[2].0, to))]
                {
                    if value >= ring.size() {
                        return Err(syntax(
                            line,
                            col,
                            format!("index {value} out of range for {}", ring.name()),
                        )
                        .into());
                    }
                }
                if head == "alpha" {
                    alpha_pairs.push((line, from, to));
                } else if beta.insert(from, to).is_some() {
                    return Err(
                        syntax(line, head_col, format!("beta at {from} given twice")).into(),
                    );
                }
            }
            "end" => {}
            _ => unreachable!(),
        }
    }
    if phase != Phase::Done {
        return Err(syntax(0, 1, "missing end").into());
    }

    let s2 = Subring::closure_indices(&ring2, &right_gens);
    let q1 = center_quotient(&s1);
    let q2 = center_quotient(&s2);
    let mut alpha: Vec<Option<u32>> = vec![None; q1.num_cosets()];
    for (line, from, to) in alpha_pairs {
        let ci = q1.coset_index(from);
        if alpha[ci].is_some() {
            return Err(syntax(line, 1, format!("coset of {from} mapped twice")).into());
        }
        alpha[ci] = Some(q2.coset_index(to) as u32);
    }
    let alpha = alpha
        .into_iter()
        .enumerate()
        .map(|(ci, v)| {
            v.ok_or_else(|| syntax(0, 1, format!("no alpha line for the coset of {}", q1.rep(ci))))
        })
        .collect::<Result<Vec<u32>, _>>()?;

    Ok(ZIsoclinismWitness::new(s1, s2, alpha, beta)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ringprob::isoclinism::{build_product_isoclinism, verify_isoclinism};

    #[test]
    fn z6_definition_parses() {
        let file = parse_ring_file("ring W\norders 6\nmul 1 1 : 1\nend\n", &[]).unwrap();
        assert_eq!(file.rings.len(), 1);
        assert_eq!(file.rings[0].size(), 6);
        assert!(file.rings[0].is_commutative());
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# header\n\nring W   # trailing\n orders 6\nmul 1 1 : 1\n\nend\n";
        let file = parse_ring_file(text, &[]).unwrap();
        assert_eq!(file.rings[0].size(), 6);
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        let err = parse_ring_file("ring W\norders 6\nmul 1 1 : x\nend\n", &[]).unwrap_err();
        match err {
            FileError::Syntax { line, col, .. } => {
                assert_eq!(line, 3);
                assert_eq!(col, 11);
            }
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_ring_file("bogus W\n", &[]).unwrap_err();
        assert!(matches!(err, FileError::Syntax { line: 1, col: 1, .. }));
    }

    #[test]
    fn missing_mul_line_is_caught_at_end() {
        let err = parse_ring_file("ring W\norders 2 2\nmul 1 1 : 0 0\nend\n", &[]).unwrap_err();
        match err {
            FileError::Syntax { line, msg, .. } => {
                assert_eq!(line, 4);
                assert!(msg.contains("missing mul line"), "{msg}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unterminated_block_is_an_error() {
        let err = parse_ring_file("ring W\norders 2\nmul 1 1 : 0\n", &[]).unwrap_err();
        assert!(matches!(err, FileError::Syntax { line: 3, .. }));
    }

    #[test]
    fn coefficient_out_of_range_is_a_validation_error() {
        let err = parse_ring_file("ring W\norders 3\nmul 1 1 : 5\nend\n", &[]).unwrap_err();
        assert!(matches!(err, FileError::Validation { .. }), "{err:?}");
    }

    #[test]
    fn duplicate_and_unknown_names_are_rejected() {
        let context = builtin_catalog();
        let err = parse_ring_file("ring Z6\norders 6\nmul 1 1 : 1\nend\n", &context).unwrap_err();
        assert!(matches!(err, FileError::DuplicateName { line: 1, .. }));
        let err = parse_ring_file("subring s of Nowhere\nend\n", &context).unwrap_err();
        assert!(matches!(err, FileError::UnknownRingReference { line: 1, .. }));
        let err = parse_ring_file("subring diag of M2_Z2\nend\n", &context).unwrap_err();
        assert!(matches!(err, FileError::DuplicateName { line: 1, .. }));
    }

    #[test]
    fn subring_closure_and_empty_gen_list() {
        let context = builtin_catalog();
        let text = "subring mine of M2_Z2\ngen 0 1 0 0\nend\nsubring nothing of Z6\nend\n";
        let file = parse_ring_file(text, &context).unwrap();
        // E12 generates {0, E12}: it is nilpotent and additively of order 2.
        assert_eq!(file.subrings[0].subring.count(), 2);
        assert_eq!(file.subrings[1].subring.count(), 1);
    }

    #[test]
    fn every_builtin_ring_round_trips_through_the_grammar() {
        for entry in builtin_catalog() {
            let text = ring_to_text(&entry.ring);
            let file = parse_ring_file(&text, &[]).unwrap();
            assert_eq!(file.rings.len(), 1, "{}", entry.name());
            let back = &file.rings[0];
            assert_eq!(back.spec(), entry.ring.spec(), "{}", entry.name());
            assert_eq!(back.size(), entry.ring.size());
        }
    }

    #[test]
    fn product_names_resolve_by_splitting() {
        let ctx = NameContext::builtin();
        assert_eq!(ctx.resolve_ring("M2_Z2").unwrap().size(), 16);
        let product = ctx.resolve_ring("M2_Z2xZ3").unwrap();
        assert_eq!(product.size(), 48);
        assert_eq!(product.name(), "M2_Z2xZ3");
        assert!(ctx.resolve_ring("M2_Z2xNowhere").is_none());
        assert!(ctx.resolve_ring("Nowhere").is_none());
    }

    #[test]
    fn context_accumulates_files_in_order() {
        let mut ctx = NameContext::builtin();
        ctx.add_file("ring W\norders 4\nmul 1 1 : 2\nend\n").unwrap();
        ctx.add_file("subring half of W\ngen 2\nend\n").unwrap();
        let ring = ctx.resolve_ring("W").unwrap();
        let half = ctx.resolve_subring(&ring, "half").unwrap();
        assert_eq!(half.count(), 2);
        let err = ctx.add_file("ring W\norders 2\nmul 1 1 : 0\nend\n").unwrap_err();
        assert!(matches!(err, FileError::DuplicateName { .. }));
    }

    #[test]
    fn witness_blocks_round_trip() {
        let ctx = NameContext::builtin();
        let ring = ctx.resolve_ring("M2_Z2").unwrap();
        let diag = ctx.resolve_subring(&ring, "diag").unwrap();
        let factor = ctx.resolve_ring("Z3").unwrap();
        let witness = build_product_isoclinism(&diag, &factor).unwrap();
        let text = witness_to_text(&witness, "diag");
        let parsed = parse_witness(&text, &ctx).unwrap();
        assert_eq!(parsed.alpha, witness.alpha);
        assert_eq!(parsed.beta, witness.beta);
        assert!(verify_isoclinism(&parsed).pass());
        assert_eq!(witness_to_text(&parsed, "diag"), text);
    }

    #[test]
    fn witness_parse_rejects_malformed_blocks() {
        let ctx = NameContext::builtin();
        let ring = ctx.resolve_ring("M2_Z2").unwrap();
        let diag = ctx.resolve_subring(&ring, "diag").unwrap();
        let factor = ctx.resolve_ring("Z2").unwrap();
        let witness = build_product_isoclinism(&diag, &factor).unwrap();
        let text = witness_to_text(&witness, "diag");

        let duplicated = text.replacen("beta 0 0\n", "beta 0 0\nbeta 0 0\n", 1);
        assert!(matches!(
            parse_witness(&duplicated, &ctx),
            Err(WitnessError::File(FileError::Syntax { .. }))
        ));

        let missing_beta = text.replacen("beta 0 0\n", "", 1);
        assert!(matches!(
            parse_witness(&missing_beta, &ctx),
            Err(WitnessError::Shape(_))
        ));

        let out_of_order = text.replace("end\n", "right-gen 0 0 0 0 0\nend\n");
        assert!(matches!(
            parse_witness(&out_of_order, &ctx),
            Err(WitnessError::File(FileError::Syntax { .. }))
        ));
    }
}
