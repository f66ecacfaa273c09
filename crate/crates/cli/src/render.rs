//! Plain text and LaTeX renderings.

use azbk_core::bar::BarTensor;
use azbk_core::relations::{Form, Relation};
use azbk_core::{CoeffExpr, Letter, Rational, Symbol, Word};

fn text_symbol(form: Form) -> impl Fn(&Symbol) -> String {
    move |s: &Symbol| match (s, form.is_mzv()) {
        (Symbol::Zs(w), true) => format!("ζ⧢({w})"),
        (Symbol::Pi, true) => "(iπ)".to_string(),
        _ => s.to_string(),
    }
}

pub fn expr_text(e: &CoeffExpr, form: Form) -> String {
    e.render(&text_symbol(form))
}

/// `key: lhs = 0`
pub fn relation_text(r: &Relation) -> String {
    format!("{}: {} = 0", r.key, expr_text(&r.lhs, r.form))
}

/// `X24.X45 = -1 [w12|w24] +1 [w24|w45]`
pub fn tensor_text(key: &str, t: &BarTensor) -> String {
    format!("{key} = {t}")
}

/// `X12.X24 = 1*X12.X24 + ...`, terms in word order.
pub fn combination_text(word: &Word, terms: &[(Word, i64)]) -> String {
    if terms.is_empty() {
        return format!("{word} = 0");
    }
    let mut out = format!("{word} = ");
    for (i, (w, c)) in terms.iter().enumerate() {
        out.push_str(match (i, *c < 0) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        out.push_str(&format!("{}*{w}", c.unsigned_abs()));
    }
    out
}

fn letter_tex(l: Letter) -> String {
    let sub = &l.name()[1..];
    if sub.len() == 1 {
        format!("X_{sub}")
    } else {
        format!("X_{{{sub}}}")
    }
}

pub fn word_tex(w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.letters().iter().map(|&l| letter_tex(l)).collect()
}

fn rational_tex(q: &Rational) -> String {
    if q.is_integer() {
        q.to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

fn symbol_tex(s: &Symbol, form: Form) -> String {
    match (s, form.is_mzv()) {
        (Symbol::Zs(w), true) => format!("\\zeta^{{\\sqcup\\!\\sqcup}}({})", word_tex(w)),
        (Symbol::Zs(w), false) => format!("Z_{{{}}}", word_tex(w)),
        (Symbol::Pi, true) => "(i\\pi)".to_string(),
        (Symbol::Pi, false) => "\\mathrm{PI}".to_string(),
        (Symbol::Mu, _) => "\\mu".to_string(),
    }
}

pub fn expr_tex(e: &CoeffExpr, form: Form) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in e.terms().enumerate() {
        let neg = c < &Rational::from_integer(0.into());
        let a = if neg { -c.clone() } else { c.clone() };
        out.push_str(match (i, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        if a != Rational::from_integer(1.into()) || m.is_one() {
            out.push_str(&rational_tex(&a));
        }
        for (s, e) in m.factors() {
            out.push_str(&symbol_tex(s, form));
            if *e > 1 {
                out.push_str(&format!("^{{{e}}}"));
            }
        }
    }
    out
}

fn bar_word_tex(w: &Word) -> String {
    let parts: Vec<String> =
        w.letters().iter().map(|&l| format!("\\omega_{{{}}}", azbk_core::bar::label(l))).collect();
    format!("[{}]", parts.join("|"))
}

pub fn tensor_tex(t: &BarTensor) -> String {
    if t.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (w, c)) in t.sorted_terms().into_iter().enumerate() {
        let neg = c < &Rational::from_integer(0.into());
        let a = if neg { -c.clone() } else { c.clone() };
        out.push_str(match (i, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        if a != Rational::from_integer(1.into()) {
            out.push_str(&rational_tex(&a));
        }
        out.push_str(&bar_word_tex(w));
    }
    out
}

/// A standalone document holding one two-column table per block.
pub struct LatexTables {
    blocks: Vec<(String, Vec<(String, String)>)>,
}

impl LatexTables {
    pub fn new() -> Self {
        LatexTables { blocks: Vec::new() }
    }

    pub fn table(&mut self, header: (&str, &str), rows: Vec<(String, String)>) {
        let mut all = vec![(header.0.to_string(), header.1.to_string())];
        all.extend(rows);
        self.blocks.push(("l l".to_string(), all));
    }

    pub fn relation_rows(rels: &[Relation]) -> Vec<(String, String)> {
        rels.iter()
            .map(|r| (format!("${}$", word_tex(&r.key)), format!("${} = 0$", expr_tex(&r.lhs, r.form))))
            .collect()
    }

    pub fn tensor_rows(rows: &[(Word, BarTensor)]) -> Vec<(String, String)> {
        rows.iter()
            .map(|(k, t)| (format!("${}^*$", word_tex(k)), format!("${}$", tensor_tex(t))))
            .collect()
    }

    pub fn finish(self) -> String {
        let mut out = String::from("\\documentclass{article}\n\\usepackage{amssymb}\n\\begin{document}\n");
        for (cols, rows) in self.blocks {
            out.push_str(&format!("\\begin{{tabular}}{{{cols}}}\n\\hline\n"));
            for (i, (a, b)) in rows.iter().enumerate() {
                out.push_str(&format!("{a} & {b} \\\\\n"));
                if i == 0 {
                    out.push_str("\\hline\n");
                }
            }
            out.push_str("\\hline\n\\end{tabular}\n\n");
        }
        out.push_str("\\end{document}\n");
        out
    }
}

impl Default for LatexTables {
    fn default() -> Self {
        Self::new()
    }
}
