//! Loader for invoice-line CSV exports (one row per purchased line item).

use std::collections::HashMap;
use std::io::Read;

use crate::error::{Error, Result};
use crate::model::TransactionDatabase;

pub const DEFAULT_INVOICE_COL: &str = "InvoiceNo";
pub const DEFAULT_ITEM_COL: &str = "Description";

/// Groups rows by invoice id into transactions, in order of each invoice's
/// first row. Item tokens are trimmed; blank descriptions are dropped, as
/// are repeated items within an invoice. No returns filtering is applied.
pub fn parse_retail_csv<R: Read>(reader: R, invoice_col: &str, item_col: &str) -> Result<TransactionDatabase> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
    let headers = rdr.headers()?.clone();
    let find = |name: &str| headers.iter().position(|h| h.trim() == name);
    let (inv, item) = match (find(invoice_col), find(item_col)) {
        (Some(i), Some(j)) => (i, j),
        (i, j) => {
            let mut missing = Vec::new();
            if i.is_none() {
                missing.push(invoice_col.to_owned());
            }
            if j.is_none() {
                missing.push(item_col.to_owned());
            }
            return Err(Error::MissingColumns(missing));
        }
    };

    let mut slot: HashMap<String, usize> = HashMap::new();
    let mut groups: Vec<Vec<String>> = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let Some(invoice) = record.get(inv).map(str::trim).filter(|s| !s.is_empty()) else {
            continue;
        };
        let Some(name) = record.get(item).map(str::trim).filter(|s| !s.is_empty()) else {
            continue;
        };
        let idx = *slot.entry(invoice.to_owned()).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[idx].push(name.to_owned());
    }
    Ok(TransactionDatabase::from_transactions(groups))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SIX_ROWS: &str = "\
InvoiceNo,StockCode,Description,Quantity
536365,85123A,WHITE HANGING HEART T-LIGHT HOLDER,6
536365,71053,WHITE METAL LANTERN,6
536366,22633,HAND WARMER UNION JACK,6
536367,84879, ASSORTED COLOUR BIRD ORNAMENT ,32
536366,22632,HAND WARMER RED POLKA DOT,6
536367,22745,POPPY'S PLAYHOUSE BEDROOM,6
";

    fn parse(text: &str) -> Result<TransactionDatabase> {
        parse_retail_csv(text.as_bytes(), DEFAULT_INVOICE_COL, DEFAULT_ITEM_COL)
    }

    #[test]
    fn six_rows_three_invoices() {
        let db = parse(SIX_ROWS).unwrap();
        assert_eq!(db.n_transactions(), 3);
        assert_eq!(db.n_items(), 6);
        assert!(db.dictionary().id("ASSORTED COLOUR BIRD ORNAMENT").is_some());
    }

    #[test]
    fn shared_invoice_is_one_transaction() {
        let db = parse("InvoiceNo,Description\n1,a\n1,b\n").unwrap();
        assert_eq!(db.n_transactions(), 1);
        assert_eq!(db.transactions()[0].len(), 2);
    }

    #[test]
    fn blank_descriptions_and_duplicates_are_dropped() {
        let db = parse("InvoiceNo,Description\n1,a\n1,  \n1,a\n2,\n").unwrap();
        assert_eq!(db.n_transactions(), 1);
        assert_eq!(db.transactions()[0].len(), 1);
    }

    #[test]
    fn missing_columns_are_named() {
        let err = parse_retail_csv("Invoice,Item\n1,a\n".as_bytes(), "InvoiceNo", "Description").unwrap_err();
        match err {
            Error::MissingColumns(cols) => assert_eq!(cols, ["InvoiceNo", "Description"]),
            other => panic!("unexpected {other:?}"),
        }
        let db = parse_retail_csv("Invoice,Item\n1,a\n".as_bytes(), "Invoice", "Item").unwrap();
        assert_eq!(db.n_transactions(), 1);
    }
}
