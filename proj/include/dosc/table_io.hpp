#pragma once

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace dosc::io {

/// Fixed float formatting: %.17g (17 significant digits round-trip to the
/// same double).  Asserts the value is finite -- NaN/inf never reach output;
/// failures are encoded as error records instead.
std::string fmt_g17(double v);

/// RFC-4180-style field quoting (quote when the field contains comma, quote
/// or newline; double embedded quotes).
std::string csv_escape(const std::string& field);

// Minimal ordered JSON document with deterministic serialization.  Objects
// keep insertion order; numbers are emitted with fmt_g17 (doubles) or as
// plain integers.
class JsonValue {
public:
    JsonValue();  // null

    static JsonValue object();
    static JsonValue array();
    static JsonValue str(std::string s);
    static JsonValue num(double v);         // must be finite
    static JsonValue integer(std::int64_t v);
    static JsonValue boolean(bool b);

    JsonValue& set(const std::string& key, JsonValue v);  // object append; returns *this
    JsonValue& push(JsonValue v);                         // array append; returns *this

    bool is_object() const;
    bool is_array() const;

    void write(std::ostream& os, int indent = 0) const;
    std::string dump() const;

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

/// One CSV row: already-formatted fields.
using CsvRow = std::vector<std::string>;

/// '#'-prefixed comment lines, a header row, then data rows, '\n' endings.
void write_csv(std::ostream& os, const std::vector<std::string>& comments,
               const CsvRow& header, const std::vector<CsvRow>& rows);

} // namespace dosc::io
