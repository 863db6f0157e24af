#include "cdd/error.hpp"
#include "cdd/numfmt.hpp"
#include "cdd/rosetta.hpp"

namespace cdd::rosetta {

namespace {

void write_field(std::string& out, const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) {
    out += field;
    return;
  }
  out += '"';
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

void write_record(std::string& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    write_field(out, fields[i]);
  }
  out += '\n';
}

}  // namespace

std::string CsvTable::write() const {
  std::string out;
  write_record(out, header);
  for (const auto& row : rows) write_record(out, row);
  return out;
}

CsvTable CsvTable::parse(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    any = true;
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      record.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(record));
      record.clear();
      any = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw Error(Errc::SchemaError, "CSV ends inside a quoted field");
  if (any) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  CsvTable t;
  if (records.empty()) return t;
  t.header = std::move(records.front());
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].size() != t.header.size())
      throw Error(Errc::SchemaError, "CSV record " + std::to_string(i) + " has " + std::to_string(records[i].size()) +
                                         " fields, header has " + std::to_string(t.header.size()));
    t.rows.push_back(std::move(records[i]));
  }
  return t;
}

CsvTable q_table(const RosettaReport& r) {
  CsvTable t;
  t.header.push_back("objective");
  t.header.insert(t.header.end(), r.variables.begin(), r.variables.end());
  for (std::size_t i = 0; i < r.objectives.size(); ++i) {
    std::vector<std::string> row{r.objectives[i]};
    for (double q : r.q_matrix[i]) row.push_back(format_number(q));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable m_table(const RosettaReport& r) {
  CsvTable t;
  t.header.push_back("point");
  t.header.insert(t.header.end(), r.objectives.begin(), r.objectives.end());
  t.header.push_back("feasible");
  for (std::size_t f = 0; f < r.lattice.size(); ++f) {
    std::vector<std::string> row{std::to_string(f)};
    for (double z : r.objective_values[f]) row.push_back(format_number(z));
    row.push_back(r.lattice.feasible[f] ? "1" : "0");
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable n_table(const RosettaReport& r) {
  CsvTable t;
  t.header.push_back("point");
  t.header.insert(t.header.end(), r.variables.begin(), r.variables.end());
  t.header.push_back("feasible");
  const bool with_box = !r.in_orthotope.empty();
  if (with_box) t.header.push_back("in_orthotope");
  for (std::size_t f = 0; f < r.lattice.size(); ++f) {
    std::vector<std::string> row{std::to_string(f)};
    for (double x : r.lattice.point(f)) row.push_back(format_number(x));
    row.push_back(r.lattice.feasible[f] ? "1" : "0");
    if (with_box) row.push_back(r.in_orthotope[f] ? "1" : "0");
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace cdd::rosetta
