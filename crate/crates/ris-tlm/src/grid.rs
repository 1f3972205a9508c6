//! Dense row-major 2-D grid.
//!
//! `Grid::from_fn` evaluates one closure per element; with the `parallel`
//! feature it fans the elements out across a rayon pool. Elements are
//! independent and collected in index order, so the parallel result is
//! bitwise identical to [`Grid::from_fn_seq`].

use crate::error::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq)]
pub struct Grid<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Grid<T> {
    /// Builds a grid from a per-element closure, in parallel when the
    /// `parallel` feature is enabled.
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T + Sync) -> Self
    where
        T: Send,
    {
        #[cfg(feature = "parallel")]
        let data = (0..rows * cols)
            .into_par_iter()
            .map(|i| f(i / cols, i % cols))
            .collect();
        #[cfg(not(feature = "parallel"))]
        let data = (0..rows * cols).map(|i| f(i / cols, i % cols)).collect();
        Self { rows, cols, data }
    }

    /// Sequential reference path for [`Grid::from_fn`].
    pub fn from_fn_seq(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T + Sync) -> Self
    where
        T: Send,
    {
        let data = (0..rows * cols).map(|i| f(i / cols, i % cols)).collect();
        Self { rows, cols, data }
    }

    /// Fallible variant of [`Grid::from_fn`]; returns the first error.
    pub fn try_from_fn(
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> Result<T> + Sync,
    ) -> Result<Self>
    where
        T: Send,
    {
        #[cfg(feature = "parallel")]
        let data: Result<Vec<T>> = (0..rows * cols)
            .into_par_iter()
            .map(|i| f(i / cols, i % cols))
            .collect();
        #[cfg(not(feature = "parallel"))]
        let data: Result<Vec<T>> = (0..rows * cols).map(|i| f(i / cols, i % cols)).collect();
        Ok(Self {
            rows,
            cols,
            data: data?,
        })
    }

    /// Sequential reference path for [`Grid::try_from_fn`].
    pub fn try_from_fn_seq(
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> Result<T> + Sync,
    ) -> Result<Self>
    where
        T: Send,
    {
        let data: Result<Vec<T>> = (0..rows * cols).map(|i| f(i / cols, i % cols)).collect();
        Ok(Self {
            rows,
            cols,
            data: data?,
        })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(Error::GridBounds {
                reason: "grid must be nonempty".into(),
            });
        }
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::GridBounds {
                    reason: format!("row {i} has {} columns, expected {ncols}", row.len()),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn same_shape<U>(&self, other: &Grid<U>) -> bool {
        self.rows == other.rows && self.cols == other.cols
    }

    /// Row-major iteration over (row, col, &value).
    pub fn iter_indexed(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        let cols = self.cols;
        self.data
            .iter()
            .enumerate()
            .map(move |(i, v)| (i / cols, i % cols, v))
    }

    pub fn values(&self) -> &[T] {
        &self.data
    }
}

impl<T> std::ops::Index<(usize, usize)> for Grid<T> {
    type Output = T;

    fn index(&self, (r, c): (usize, usize)) -> &T {
        assert!(r < self.rows && c < self.cols, "grid index out of bounds");
        &self.data[r * self.cols + c]
    }
}
