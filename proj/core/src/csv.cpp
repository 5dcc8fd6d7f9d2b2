#include "ivm/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "ivm/errors.hpp"

namespace ivm {

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header.size())
    throw ConfigError("csv row has " + std::to_string(row.size()) + " fields, header has " +
                      std::to_string(header.size()));
  rows.push_back(std::move(row));
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw ConfigError("no csv column named '" + std::string(name) + "'");
}

const std::string& CsvTable::cell(std::size_t row, std::string_view name) const {
  return rows.at(row).at(column(name));
}

double CsvTable::number(std::size_t row, std::string_view name) const {
  return std::strtod(cell(row, name).c_str(), nullptr);
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_int(long long x) { return std::to_string(x); }

namespace {

void append_field(std::string& out, const std::string& field) {
  const bool quote = field.find_first_of(",\"\r\n") != std::string::npos;
  if (!quote) {
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

void append_record(std::string& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    append_field(out, fields[i]);
  }
  out += "\r\n";
}

}  // namespace

std::string to_csv(const CsvTable& table) {
  std::string out;
  append_record(out, table.header);
  for (const auto& row : table.rows) append_record(out, row);
  for (const auto& line : table.footer) {
    out += "# ";
    out += line;
    out += "\r\n";
  }
  return out;
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  std::vector<std::vector<std::string>> records;
  std::size_t i = 0;
  bool header_done = false;
  while (i < text.size()) {
    if (header_done && text[i] == '#') {
      std::size_t end = text.find('\n', i);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(i + 1, end - i - 1);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!line.empty() && line.front() == ' ') line.remove_prefix(1);
      table.footer.emplace_back(line);
      i = end + 1;
      continue;
    }
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    for (; i < text.size(); ++i) {
      const char c = text[i];
      if (in_quotes) {
        if (c == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {
            field += '"';
            ++i;
          } else {
            in_quotes = false;
          }
        } else {
          field += c;
        }
      } else if (c == '"') {
        in_quotes = true;
      } else if (c == ',') {
        record.push_back(std::move(field));
        field.clear();
      } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
        continue;
      } else if (c == '\n') {
        ++i;
        break;
      } else {
        field += c;
      }
    }
    record.push_back(std::move(field));
    if (!header_done) {
      table.header = std::move(record);
      header_done = true;
    } else {
      table.rows.push_back(std::move(record));
    }
  }
  return table;
}

void write_csv(const CsvTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  const std::string text = to_csv(table);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace ivm
