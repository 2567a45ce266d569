// Copyright 2026 The aaceval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AACEVAL_CSV_H_
#define AACEVAL_CSV_H_

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aaceval {

using CsvRow = std::vector<std::string>;

// RFC-4180 parsing: quoted fields may contain commas, doubled quotes and
// newlines. Accepts LF or CRLF line endings and a UTF-8 BOM. Throws
// DataError on an unterminated quote.
std::vector<CsvRow> parse_csv(std::string_view text);
std::vector<CsvRow> read_csv(const std::filesystem::path& path);

// Quotes a field only when it contains a comma, quote, CR or LF.
std::string csv_escape(std::string_view field);
void write_csv_row(std::ostream& out, std::span<const std::string> fields);

// Shortest text that parses back to the same double.
std::string format_double(double value);
// Whole-string parse; throws DataError.
double parse_double(std::string_view text);

// Column lookup over a header row; throws DataError naming the first missing
// column.
class CsvHeader {
 public:
  CsvHeader(const CsvRow& header, std::span<const std::string_view> required,
            std::string_view source);
  std::size_t operator[](std::string_view column) const;

 private:
  CsvRow columns_;
};

}  // namespace aaceval

#endif  // AACEVAL_CSV_H_
