use alloc::format;
use alloc::vec::Vec;

use crate::bits::MAX_CARRIER;
use crate::error::{Error, Result};

/// An `n x n` operation table with entries in `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Table {
    size: usize,
    cells: Vec<u8>,
}

impl Table {
    /// Builds a table, checking it is square and every entry names a carrier element.
    pub fn from_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<Table> {
        let size = rows.len();
        check_size(size)?;
        let mut cells = Vec::with_capacity(size * size);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != size {
                return Err(Error::MalformedInput(format!("row {i} has {} entries, expected {size}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= size {
                    return Err(Error::MalformedInput(format!(
                        "entry [{i}][{j}] = {v} is outside the carrier of size {size}"
                    )));
                }
                cells.push(v as u8);
            }
        }
        Ok(Table { size, cells })
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> usize) -> Table {
        let mut cells = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                let v = f(i, j);
                debug_assert!(v < size);
                cells.push(v as u8);
            }
        }
        Table { size, cells }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.size + b] as usize
    }

    pub fn set(&mut self, a: usize, b: usize, v: usize) {
        debug_assert!(v < self.size);
        self.cells[a * self.size + b] = v as u8;
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.size).map(|i| (0..self.size).map(|j| self.get(i, j)).collect()).collect()
    }

    /// The table transported along the relabelling `perm` (old index -> new index).
    pub fn relabel(&self, perm: &[usize]) -> Table {
        let mut out = self.clone();
        for a in 0..self.size {
            for b in 0..self.size {
                out.set(perm[a], perm[b], perm[self.get(a, b)]);
            }
        }
        out
    }

    pub(crate) fn cells(&self) -> &[u8] {
        &self.cells
    }
}

pub(crate) fn check_size(size: usize) -> Result<()> {
    if size == 0 {
        return Err(Error::MalformedInput("carrier must be non-empty".into()));
    }
    if size > MAX_CARRIER {
        return Err(Error::MalformedInput(format!(
            "carrier of size {size} exceeds the supported maximum {MAX_CARRIER}"
        )));
    }
    Ok(())
}
