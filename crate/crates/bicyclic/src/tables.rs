//! Embedded regression datasets: the appendix lists of imaginary quadratic
//! radicands with small class number, and the full field tables for class
//! numbers 6 and 7 with their subfield class groups.
//!
//! The files ship inside the binary; setting `BIQUAD_DATA_DIR` points the
//! loader at a directory with the same file names instead. Row counts and
//! checksums are validated either way.

use crate::imagquad::AbelianGroupStructure;
use crate::{Error, Result};
use once_cell::sync::OnceCell;
use std::collections::BTreeMap;

const APPENDIX_TSV: &str = include_str!("../data/appendix.tsv");
const TABLE11_TSV: &str = include_str!("../data/table11.tsv");
const TABLE12_TSV: &str = include_str!("../data/table12.tsv");
const TABLE13_TSV: &str = include_str!("../data/table13.tsv");
const TABLE14_TSV: &str = include_str!("../data/table14.tsv");

/// (file name, embedded content, row count, FNV-1a 64 checksum)
const MANIFEST: [(&str, &str, usize, u64); 5] = [
    ("appendix.tsv", APPENDIX_TSV, 9, 0x816d279bda2cde02),
    ("table11.tsv", TABLE11_TSV, 87, 0x8ab2b383d481717c),
    ("table12.tsv", TABLE12_TSV, 180, 0x645461c1ec896849),
    ("table13.tsv", TABLE13_TSV, 285, 0xef167c169a45641c),
    ("table14.tsv", TABLE14_TSV, 277, 0x18cf2adec8f8e675),
];

fn fnv1a64(data: &[u8]) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &b in data {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn load_raw(name: &str) -> Result<String> {
    let (_, embedded, rows, sum) = MANIFEST
        .iter()
        .find(|(n, ..)| *n == name)
        .expect("unknown data file");
    let content = match std::env::var_os("BIQUAD_DATA_DIR") {
        Some(dir) => std::fs::read_to_string(std::path::Path::new(&dir).join(name))
            .map_err(|e| Error::BadData(format!("{name}: {e}")))?,
        None => (*embedded).to_string(),
    };
    if content.lines().count() != *rows {
        return Err(Error::BadData(format!(
            "{name}: expected {rows} rows, found {}",
            content.lines().count()
        )));
    }
    if fnv1a64(content.as_bytes()) != *sum {
        return Err(Error::BadData(format!("{name}: checksum mismatch")));
    }
    Ok(content)
}

/// The appendix lists: class number -> complete sorted list of squarefree
/// `d` with `h(Q(sqrt(-d))) = h`, for `h` in {1,2,3,4,6,7,8,12,14}.
pub fn appendix_lists() -> Result<&'static BTreeMap<u64, Vec<u64>>> {
    static CACHE: OnceCell<BTreeMap<u64, Vec<u64>>> = OnceCell::new();
    if let Some(v) = CACHE.get() {
        return Ok(v);
    }
    let content = load_raw("appendix.tsv")?;
    let mut map = BTreeMap::new();
    for line in content.lines() {
        let (h, rest) = line
            .split_once('\t')
            .ok_or_else(|| Error::BadData("appendix.tsv: malformed row".into()))?;
        let h: u64 = h.parse().map_err(|_| Error::BadData("appendix.tsv: bad class number".into()))?;
        let vals: Vec<u64> = rest
            .split_whitespace()
            .map(|v| v.parse().map_err(|_| Error::BadData("appendix.tsv: bad value".into())))
            .collect::<Result<_>>()?;
        if !vals.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::BadData(format!("appendix.tsv: h={h} list not sorted")));
        }
        map.insert(h, vals);
    }
    let keys: Vec<u64> = map.keys().copied().collect();
    if keys != [1, 2, 3, 4, 6, 7, 8, 12, 14] {
        return Err(Error::BadData("appendix.tsv: unexpected class numbers".into()));
    }
    Ok(CACHE.get_or_init(|| map))
}

/// One row of an embedded field table, canonicalized so `x < y` and `cl1`
/// is the class group of `Q(sqrt(-x))`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TableRow {
    pub x: u64,
    pub y: u64,
    pub cl1: AbelianGroupStructure,
    pub cl2: AbelianGroupStructure,
    pub cl3: AbelianGroupStructure,
}

/// Parse "1", "12", "2x6" into a divisor chain.
pub fn parse_group(s: &str) -> Result<AbelianGroupStructure> {
    if s == "1" {
        return Ok(AbelianGroupStructure::trivial());
    }
    let elementary_divisors: Vec<u64> = s
        .split('x')
        .map(|p| p.parse().map_err(|_| Error::BadData(format!("bad group: {s}"))))
        .collect::<Result<_>>()?;
    let g = AbelianGroupStructure { elementary_divisors };
    if !g.is_valid() {
        return Err(Error::BadData(format!("bad divisor chain: {s}")));
    }
    Ok(g)
}

fn parse_five_column(name: &str) -> Result<Vec<TableRow>> {
    let content = load_raw(name)?;
    let mut rows = Vec::new();
    for line in content.lines() {
        let cells: Vec<&str> = line.split('\t').collect();
        if cells.len() != 5 {
            return Err(Error::BadData(format!("{name}: malformed row")));
        }
        let x: u64 = cells[0].parse().map_err(|_| Error::BadData(format!("{name}: bad radicand")))?;
        let y: u64 = cells[1].parse().map_err(|_| Error::BadData(format!("{name}: bad radicand")))?;
        let cl1 = parse_group(cells[2])?;
        let cl2 = parse_group(cells[3])?;
        let cl3 = parse_group(cells[4])?;
        rows.push(if x <= y {
            TableRow { x, y, cl1, cl2, cl3 }
        } else {
            TableRow { x: y, y: x, cl1: cl2, cl2: cl1, cl3 }
        });
    }
    Ok(rows)
}

/// Tables for class number 6, partitioned by the number of prime factors
/// of `d_xy`: one, two and three respectively.
pub fn h6_tables() -> Result<[Vec<TableRow>; 3]> {
    Ok([
        parse_five_column("table11.tsv")?,
        parse_five_column("table12.tsv")?,
        parse_five_column("table13.tsv")?,
    ])
}

/// Table for class number 7: rows list the pair and the class group of the
/// unique subfield with nontrivial class group.
pub fn h7_table() -> Result<Vec<TableRow>> {
    let content = load_raw("table14.tsv")?;
    let mut rows = Vec::new();
    for line in content.lines() {
        let cells: Vec<&str> = line.split('\t').collect();
        if cells.len() != 3 {
            return Err(Error::BadData("table14.tsv: malformed row".into()));
        }
        let x: u64 = cells[0].parse().map_err(|_| Error::BadData("table14.tsv: bad radicand".into()))?;
        let y: u64 = cells[1].parse().map_err(|_| Error::BadData("table14.tsv: bad radicand".into()))?;
        let cl_y = parse_group(cells[2])?;
        let trivial = AbelianGroupStructure::trivial;
        rows.push(if x <= y {
            TableRow { x, y, cl1: trivial(), cl2: cl_y, cl3: trivial() }
        } else {
            TableRow { x: y, y: x, cl1: cl_y, cl2: trivial(), cl3: trivial() }
        });
    }
    Ok(rows)
}
