#pragma once

#include "qcas/solver.hpp"

namespace qcas {

// A table together with the name of the algebra it belongs to.
struct TableFile {
    std::string algebra;
    SolutionTable table;
};

// JSON object with keys algebra, status, entries, free, pins. Entries are
// {"beta":[...],"d":[...],"value":"p/q"} sorted by (<beta,omega>, beta lex,
// d lex); values in lowest terms with positive denominator. Output is
// deterministic (compact, no whitespace variance).
std::string table_to_json(const TableFile& tf, const ConeSpec& cone);
TableFile table_from_json(const std::string& text);

// Header "beta;d;value", one entry per line in the same order, vector
// coordinates comma-joined. Carries only the values.
std::string table_to_csv(const TableFile& tf, const ConeSpec& cone);
TableFile table_from_csv(const std::string& text);

// format is "json" or "csv"
std::string export_table(const TableFile& tf, const ConeSpec& cone, const std::string& format);

// Sniffs the format: JSON when the first non-space byte is '{'.
TableFile import_table(const std::string& text);

// Every entry must have the cone's coordinate rank, a nonzero class inside
// the cone, the algebra's higher-slot count, and pass the dimension filter.
void validate_table_entries(const Bundle& b, const SolutionTable& table);

}  // namespace qcas
