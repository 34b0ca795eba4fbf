use std::fmt::Write;

use crate::homalg::spectral::SpectralPage;

/// Aligned text grid: rows `q` from top down, columns `p`.
pub fn page_table(page: &SpectralPage) -> String {
    let n = page.n_max;
    let width = (0..=n)
        .flat_map(|p| (0..=n - p).map(move |q| (p, q)))
        .map(|(p, q)| page.dim(p, q).to_string().len())
        .chain(std::iter::once(n.to_string().len()))
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    let title = match page.r {
        Some(r) => format!("E_{r}"),
        None => "E_inf".to_string(),
    };
    let _ = writeln!(out, "{title}");
    for q in (0..=n).rev() {
        let _ = write!(out, "q={q:>w$} |", w = n.to_string().len());
        for p in 0..=n - q {
            let _ = write!(out, " {:>width$}", page.dim(p, q));
        }
        out.push('\n');
    }
    let _ = write!(out, "{:>w$}  ", "", w = n.to_string().len() + 2);
    for p in 0..=n {
        let _ = write!(out, " {p:>width$}");
    }
    out.push_str("  = p\n");
    out
}

pub fn page_csv(page: &SpectralPage) -> String {
    let mut out = String::from("p,q,dim\n");
    for p in 0..=page.n_max {
        for q in 0..=page.n_max - p {
            let _ = writeln!(out, "{p},{q},{}", page.dim(p, q));
        }
    }
    out
}

pub fn graded_table(label: &str, dims: &[usize]) -> String {
    let mut out = String::new();
    for (n, d) in dims.iter().enumerate() {
        let _ = writeln!(out, "{label}^{n} = {d}");
    }
    out
}

pub fn graded_csv(dims: &[usize]) -> String {
    let mut out = String::from("n,dim\n");
    for (n, d) in dims.iter().enumerate() {
        let _ = writeln!(out, "{n},{d}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn page() -> SpectralPage {
        SpectralPage { r: Some(2), n_max: 1, dims: vec![vec![1, 10], vec![2]], ranks: vec![vec![0, 0], vec![0]], stable: vec![true, true] }
    }

    #[test]
    fn csv_lists_every_cell() {
        assert_eq!(page_csv(&page()), "p,q,dim\n0,0,1\n0,1,10\n1,0,2\n");
        assert_eq!(graded_csv(&[1, 0]), "n,dim\n0,1\n1,0\n");
    }

    #[test]
    fn table_puts_high_rows_first() {
        let t = page_table(&page());
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines[0], "E_2");
        assert!(lines[1].starts_with("q=1") && lines[1].ends_with("10"));
        assert!(lines[2].starts_with("q=0"));
    }
}
