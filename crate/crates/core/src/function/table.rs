use std::fmt::Write as _;

use super::{FunctionError, Partition};
use crate::gf::GfMatrix;
use crate::graph::SourceSet;

/// Largest product domain a table may have.
pub const MAX_DOMAIN: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alphabet {
    pub size: usize,
    pub zero: Option<usize>,
}

impl Alphabet {
    pub fn new(size: usize) -> Self {
        Alphabet { size, zero: None }
    }

    pub fn with_zero(size: usize, zero: usize) -> Self {
        Alphabet { size, zero: Some(zero) }
    }
}

/// A total function on `A_1 × … × A_s`, stored densely. Tuples are indexed in
/// mixed radix with the first coordinate most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TabularFunction {
    inputs: Vec<Alphabet>,
    output: Alphabet,
    table: Vec<usize>,
}

fn domain_size(inputs: &[Alphabet]) -> Result<usize, FunctionError> {
    let mut n = 1usize;
    for a in inputs {
        if a.size == 0 {
            return Err(FunctionError::InvalidTable("empty alphabet".into()));
        }
        if a.zero.is_some_and(|z| z >= a.size) {
            return Err(FunctionError::InvalidTable(format!("zero {} outside alphabet of size {}", a.zero.unwrap(), a.size)));
        }
        n = n
            .checked_mul(a.size)
            .filter(|&n| n <= MAX_DOMAIN)
            .ok_or(FunctionError::InstanceTooLarge {
                what: "function domain",
                size: usize::MAX,
                limit: MAX_DOMAIN,
            })?;
    }
    Ok(n)
}

impl TabularFunction {
    pub fn new(inputs: Vec<Alphabet>, output: Alphabet, table: Vec<usize>) -> Result<Self, FunctionError> {
        let n = domain_size(&inputs)?;
        if inputs.is_empty() || output.size == 0 {
            return Err(FunctionError::InvalidTable("no inputs or empty output alphabet".into()));
        }
        if table.len() != n {
            return Err(FunctionError::InvalidTable(format!("{} entries for a domain of {}", table.len(), n)));
        }
        if let Some(v) = table.iter().find(|&&v| v >= output.size) {
            return Err(FunctionError::InvalidTable(format!("output {v} outside alphabet of size {}", output.size)));
        }
        Ok(TabularFunction { inputs, output, table })
    }

    pub fn from_fn(inputs: Vec<Alphabet>, output: Alphabet, f: impl Fn(&[usize]) -> usize) -> Result<Self, FunctionError> {
        let n = domain_size(&inputs)?;
        let table = (0..n).map(|x| f(&decode(&inputs, x))).collect();
        Self::new(inputs, output, table)
    }

    /// `ζ(m) = m`.
    pub fn identity(inputs: Vec<Alphabet>) -> Result<Self, FunctionError> {
        let n = domain_size(&inputs)?;
        Self::new(inputs, Alphabet::new(n), (0..n).collect())
    }

    /// `m ↦ m·T` over `F_q`, symbols being field element codes with zero 0.
    /// The output vector is encoded with its first entry most significant.
    pub fn linear(t: &GfMatrix) -> Result<Self, FunctionError> {
        let q = t.field().order() as usize;
        let inputs = vec![Alphabet::with_zero(q, 0); t.rows()];
        let out = q
            .checked_pow(t.cols() as u32)
            .ok_or(FunctionError::InstanceTooLarge {
                what: "output alphabet",
                size: usize::MAX,
                limit: MAX_DOMAIN,
            })?;
        let field = t.field().clone();
        Self::from_fn(inputs, Alphabet::with_zero(out, 0), |m| {
            (0..t.cols()).fold(0, |acc, j| {
                let v = (0..t.rows()).fold(0, |s, i| field.add(s, field.mul(m[i] as u32, t.get(i, j))));
                acc * q + v as usize
            })
        })
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    pub fn inputs(&self) -> &[Alphabet] {
        &self.inputs
    }

    pub fn output(&self) -> Alphabet {
        self.output
    }

    pub fn domain_size(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn value_at(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn eval(&self, m: &[usize]) -> usize {
        self.table[encode(&self.inputs, m)]
    }

    pub fn decode(&self, x: usize) -> Vec<usize> {
        decode(&self.inputs, x)
    }

    pub fn encode(&self, m: &[usize]) -> usize {
        encode(&self.inputs, m)
    }

    pub fn is_constant(&self) -> bool {
        self.table.iter().all(|&v| v == self.table[0])
    }

    /// Parses the tabular text format:
    ///
    /// ```text
    /// alphabets 2 2 / out 2
    /// zeros 0 0
    /// 0 0 -> 0
    /// 0 1 -> 1
    /// ...
    /// ```
    ///
    /// The `zeros` line is optional. Every input tuple must appear exactly once.
    pub fn parse(text: &str) -> Result<Self, FunctionError> {
        let err = |line: usize, msg: String| FunctionError::Parse { line, msg };
        let num = |line: usize, tok: &str| tok.parse::<usize>().map_err(|_| err(line, format!("bad number `{tok}`")));
        let mut header: Option<(Vec<usize>, usize)> = None;
        let mut zeros: Option<Vec<usize>> = None;
        let mut table: Vec<Option<usize>> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            let toks: Vec<&str> = content.split_whitespace().collect();
            match toks[0] {
                "alphabets" => {
                    if header.is_some() {
                        return Err(err(line, "repeated header".into()));
                    }
                    let slash = toks.iter().position(|&t| t == "/").ok_or_else(|| err(line, "missing `/ out o`".into()))?;
                    if toks.len() != slash + 3 || toks[slash + 1] != "out" || slash < 2 {
                        return Err(err(line, "expected `alphabets a1 .. as / out o`".into()));
                    }
                    let sizes = toks[1..slash].iter().map(|t| num(line, t)).collect::<Result<Vec<_>, _>>()?;
                    let out = num(line, toks[slash + 2])?;
                    let inputs: Vec<Alphabet> = sizes.iter().map(|&a| Alphabet::new(a)).collect();
                    let n = domain_size(&inputs).map_err(|e| err(line, e.to_string()))?;
                    table = vec![None; n];
                    header = Some((sizes, out));
                }
                "zeros" => {
                    let (sizes, _) = header.as_ref().ok_or_else(|| err(line, "zeros before header".into()))?;
                    let z = toks[1..].iter().map(|t| num(line, t)).collect::<Result<Vec<_>, _>>()?;
                    if z.len() != sizes.len() {
                        return Err(err(line, format!("{} zeros for {} alphabets", z.len(), sizes.len())));
                    }
                    zeros = Some(z);
                }
                _ => {
                    let (sizes, out) = header.as_ref().ok_or_else(|| err(line, "entry before header".into()))?;
                    let arrow = toks.iter().position(|&t| t == "->").ok_or_else(|| err(line, "missing `->`".into()))?;
                    if arrow != sizes.len() || toks.len() != arrow + 2 {
                        return Err(err(line, format!("expected {} inputs, `->` and one output", sizes.len())));
                    }
                    let m = toks[..arrow].iter().map(|t| num(line, t)).collect::<Result<Vec<_>, _>>()?;
                    if let Some(k) = (0..m.len()).find(|&k| m[k] >= sizes[k]) {
                        return Err(err(line, format!("input {} out of range", m[k])));
                    }
                    let o = num(line, toks[arrow + 1])?;
                    if o >= *out {
                        return Err(err(line, format!("output {o} out of range")));
                    }
                    let inputs: Vec<Alphabet> = sizes.iter().map(|&a| Alphabet::new(a)).collect();
                    let slot = &mut table[encode(&inputs, &m)];
                    if slot.is_some() {
                        return Err(err(line, "duplicate input tuple".into()));
                    }
                    *slot = Some(o);
                }
            }
        }
        let (sizes, out) = header.ok_or_else(|| err(0, "missing `alphabets` header".into()))?;
        let inputs: Vec<Alphabet> = match zeros {
            Some(z) => sizes.iter().zip(z).map(|(&a, z)| Alphabet::with_zero(a, z)).collect(),
            None => sizes.iter().map(|&a| Alphabet::new(a)).collect(),
        };
        let missing = table.iter().position(Option::is_none);
        if let Some(x) = missing {
            return Err(err(0, format!("no entry for input {:?}", decode(&inputs, x))));
        }
        Self::new(inputs, Alphabet::new(out), table.into_iter().flatten().collect())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("alphabets");
        for a in &self.inputs {
            write!(s, " {}", a.size).unwrap();
        }
        writeln!(s, " / out {}", self.output.size).unwrap();
        if self.inputs.iter().all(|a| a.zero.is_some()) {
            s.push_str("zeros");
            for a in &self.inputs {
                write!(s, " {}", a.zero.unwrap()).unwrap();
            }
            s.push('\n');
        }
        for (x, &v) in self.table.iter().enumerate() {
            for m in decode(&self.inputs, x) {
                write!(s, "{m} ").unwrap();
            }
            writeln!(s, "-> {v}").unwrap();
        }
        s
    }
}

fn decode(inputs: &[Alphabet], mut x: usize) -> Vec<usize> {
    let mut m = vec![0; inputs.len()];
    for (k, a) in inputs.iter().enumerate().rev() {
        m[k] = x % a.size;
        x /= a.size;
    }
    m
}

fn encode(inputs: &[Alphabet], m: &[usize]) -> usize {
    inputs.iter().zip(m).fold(0, |acc, (a, &v)| acc * a.size + v)
}

/// Elements of the full domain grouped by equal value of `g`.
pub fn induced_partition(g: &TabularFunction) -> Partition {
    Partition::from_labels(g.table.iter().copied())
}

/// Splits full-domain indices into the coordinates inside a source subset
/// and those outside, each re-indexed in mixed radix.
pub(crate) struct Split {
    pub inside_size: usize,
    pub outside_size: usize,
    /// `(inside index, outside index)` per full-domain index.
    pub parts: Vec<(usize, usize)>,
}

impl Split {
    pub fn new(f: &TabularFunction, inside: SourceSet) -> Self {
        let (ins, outs): (Vec<usize>, Vec<usize>) = (0..f.arity()).partition(|&i| inside.contains(i));
        let sub = |idx: &[usize]| idx.iter().map(|&i| f.inputs[i]).collect::<Vec<_>>();
        let (a_in, a_out) = (sub(&ins), sub(&outs));
        let parts = (0..f.domain_size())
            .map(|x| {
                let m = f.decode(x);
                let pick = |idx: &[usize]| idx.iter().map(|&i| m[i]).collect::<Vec<_>>();
                (encode(&a_in, &pick(&ins)), encode(&a_out, &pick(&outs)))
            })
            .collect();
        Split {
            inside_size: a_in.iter().map(|a| a.size).product(),
            outside_size: a_out.iter().map(|a| a.size).product(),
            parts,
        }
    }

    /// `g[outside][inside] = f(x)`.
    pub fn slices(&self, f: &TabularFunction) -> Vec<Vec<usize>> {
        let mut g = vec![vec![0; self.inside_size]; self.outside_size];
        for (x, &(i, o)) in self.parts.iter().enumerate() {
            g[o][i] = f.table[x];
        }
        g
    }
}
