//! Braid words: parsing, normalization, the strand permutation of the
//! closure, and the induced graph of the canonical surface of a closed
//! braid (a path of multi-edges, one signed edge per letter).

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedMultigraph};

/// A word in the Artin generators of the braid group on `strands` strands.
/// Letter `k` stands for the generator `|k|` with crossing sign `sign(k)`;
/// `1 <= |k| <= strands - 1`. The empty word is the trivial braid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::parse("strand count must be positive"));
        }
        for &k in &letters {
            if k == 0 {
                return Err(Error::parse("generator index 0 is not allowed"));
            }
            if k.unsigned_abs() as usize >= strands {
                return Err(Error::parse(format!(
                    "generator index {} out of range for {strands} strands",
                    k.abs()
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Generator indices in `1..strands` that never occur in the word.
    /// A nonempty result means the induced graph is disconnected and the
    /// closure splits.
    pub fn missing_generators(&self) -> Vec<usize> {
        (1..self.strands)
            .filter(|&i| !self.letters.iter().any(|&k| k.unsigned_abs() as usize == i))
            .collect()
    }
}

/// Parses the braid file format:
///
/// ```text
/// # comment
/// strands <n>
/// word <k1> <k2> ...
/// ```
///
/// The strand count is always explicit, never inferred from the letters.
pub fn parse_braid(text: &str) -> Result<BraidWord> {
    let mut strands: Option<usize> = None;
    let mut letters: Option<Vec<i32>> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next().unwrap() {
            "strands" => {
                let rest: Vec<&str> = tokens.collect();
                let [n] = rest[..] else {
                    return Err(Error::parse(format!(
                        "line {}: expected `strands <n>`",
                        lineno + 1
                    )));
                };
                let n: usize = n.parse().map_err(|_| {
                    Error::parse(format!("line {}: bad strand count `{n}`", lineno + 1))
                })?;
                strands = Some(n);
            }
            "word" => {
                let mut ks = Vec::new();
                for tok in tokens {
                    let k: i32 = tok.parse().map_err(|_| {
                        Error::parse(format!("line {}: malformed letter `{tok}`", lineno + 1))
                    })?;
                    ks.push(k);
                }
                letters = Some(ks);
            }
            other => {
                return Err(Error::parse(format!(
                    "line {}: unknown keyword `{other}`",
                    lineno + 1
                )));
            }
        }
    }
    let strands = strands.ok_or_else(|| Error::parse("missing `strands` header"))?;
    BraidWord::new(strands, letters.unwrap_or_default())
}

/// Parses the inline `--word "<ints>" --strands <n>` form.
pub fn parse_inline_word(strands: usize, word: &str) -> Result<BraidWord> {
    let mut letters = Vec::new();
    for tok in word.split_whitespace() {
        let k: i32 = tok
            .parse()
            .map_err(|_| Error::parse(format!("malformed letter `{tok}` in word")))?;
        letters.push(k);
    }
    BraidWord::new(strands, letters)
}

/// Renders a word back into the file format; inverse of `parse_braid` on
/// canonical-form files.
pub fn render_braid(w: &BraidWord) -> String {
    let letters: Vec<String> = w.letters().iter().map(|k| k.to_string()).collect();
    if letters.is_empty() {
        format!("strands {}\nword\n", w.strands())
    } else {
        format!("strands {}\nword {}\n", w.strands(), letters.join(" "))
    }
}

/// Cancels adjacent inverse pairs `k, -k` until none remain. The closure
/// permutation and link type are unchanged.
pub fn free_reduce(w: &BraidWord) -> BraidWord {
    let mut stack: Vec<i32> = Vec::with_capacity(w.len());
    for &k in w.letters() {
        if stack.last() == Some(&-k) {
            stack.pop();
        } else {
            stack.push(k);
        }
    }
    BraidWord { strands: w.strands(), letters: stack }
}

/// Appends a trivial pair `+i, -i` at the end of the word for every
/// generator missing one of the two signs, so that afterwards each
/// generator occurs both positively and negatively. Appending a trivial
/// pair does not change the braid element, hence not the closure.
pub fn insert_trivial_pairs(w: &BraidWord) -> BraidWord {
    let mut letters = w.letters().to_vec();
    for i in 1..w.strands() {
        let has_pos = w.letters().contains(&(i as i32));
        let has_neg = w.letters().contains(&-(i as i32));
        if !(has_pos && has_neg) {
            letters.push(i as i32);
            letters.push(-(i as i32));
        }
    }
    BraidWord { strands: w.strands(), letters }
}

/// Occurrence counts per generator: `plus[i]`/`minus[i]` count the letters
/// `+i` and `-i` (1-based generator index, slot 0 unused), and `eps[i]` is
/// `+1` on balanced counts, otherwise the opposite of the majority sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorCounts {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
    pub eps: Vec<i8>,
}

impl GeneratorCounts {
    /// Count pair `(a_i(+1), a_i(-1))` for generator `i`.
    pub fn pair(&self, i: usize) -> (usize, usize) {
        (self.plus[i], self.minus[i])
    }

    /// Occurrences of generator `i` with sign `sign`.
    pub fn count(&self, i: usize, sign: i8) -> usize {
        if sign > 0 {
            self.plus[i]
        } else {
            self.minus[i]
        }
    }
}

pub fn generator_counts(w: &BraidWord) -> GeneratorCounts {
    let n = w.strands();
    let mut plus = vec![0usize; n];
    let mut minus = vec![0usize; n];
    for &k in w.letters() {
        let i = k.unsigned_abs() as usize;
        if k > 0 {
            plus[i] += 1;
        } else {
            minus[i] += 1;
        }
    }
    let eps = (0..n)
        .map(|i| match plus[i].cmp(&minus[i]) {
            std::cmp::Ordering::Equal => 1,
            std::cmp::Ordering::Greater => -1,
            std::cmp::Ordering::Less => 1,
        })
        .collect();
    GeneratorCounts { plus, minus, eps }
}

/// Number of components of the closure: the cycle count of the strand
/// permutation obtained by composing the transpositions `(|k|, |k|+1)` in
/// word order.
pub fn closure_components(w: &BraidWord) -> usize {
    let n = w.strands();
    let mut perm: Vec<usize> = (0..n).collect();
    for &k in w.letters() {
        let i = k.unsigned_abs() as usize - 1;
        perm.swap(i, i + 1);
    }
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
        }
    }
    cycles
}

/// A cyclic rotation of a braid word split into a disc prefix and a tail.
/// The prefix has `strands - 1` letters, all positive, using each generator
/// exactly once: its closure bounds a disc, so the tail statistics feed the
/// disc-based bounds. Rotating a word cyclically conjugates the braid and
/// keeps the closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscPrefixSplit {
    /// Left-rotation offset: the rotated word is `w[rotation..] ++ w[..rotation]`.
    pub rotation: usize,
    pub prefix: Vec<i32>,
    pub tail: Vec<i32>,
}

impl DiscPrefixSplit {
    /// Tail length, the `m` of the disc-based bounds.
    pub fn tail_length(&self) -> usize {
        self.tail.len()
    }

    /// Number of positive tail letters, the `s` of the disc-based bounds.
    pub fn tail_positive_count(&self) -> usize {
        self.tail.iter().filter(|&&k| k > 0).count()
    }
}

/// Searches cyclic rotations for one that exposes a disc prefix, smallest
/// offset first. Returns `None` when no rotation works (e.g. too few
/// positive letters).
pub fn find_disc_prefix(w: &BraidWord) -> Option<DiscPrefixSplit> {
    let need = w.strands() - 1;
    let len = w.len();
    if len < need {
        return None;
    }
    let rotations = if len == 0 { 1 } else { len };
    for rotation in 0..rotations {
        let rotated: Vec<i32> =
            (0..len).map(|i| w.letters()[(rotation + i) % len]).collect();
        let prefix = &rotated[..need];
        if is_disc_prefix(prefix, w.strands()) {
            return Some(DiscPrefixSplit {
                rotation,
                prefix: prefix.to_vec(),
                tail: rotated[need..].to_vec(),
            });
        }
    }
    None
}

/// All positive, each generator `1..strands` exactly once, in any order.
fn is_disc_prefix(prefix: &[i32], strands: usize) -> bool {
    let mut seen = vec![false; strands];
    for &k in prefix {
        if k <= 0 {
            return false;
        }
        let i = k as usize;
        if seen[i] {
            return false;
        }
        seen[i] = true;
    }
    seen[1..].iter().all(|&s| s)
}

/// The induced graph of the canonical surface of the closed braid: one
/// vertex per strand, one edge `(|k|, |k|+1)` per letter in word order,
/// signed by the letter. Strand parity makes it bipartite; it is connected
/// exactly when every generator occurs.
pub fn induced_graph(w: &BraidWord) -> SignedMultigraph {
    let names = (1..=w.strands()).map(|i| i.to_string()).collect();
    let edges = w
        .letters()
        .iter()
        .map(|&k| {
            let i = k.unsigned_abs() as usize - 1;
            (i, i + 1, if k > 0 { Sign::Plus } else { Sign::Minus })
        })
        .collect();
    SignedMultigraph::new(names, edges, Some(closure_components(w)))
        .expect("strand graph is well-formed")
}
