#include "dosc/table_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <variant>

namespace dosc::io {

std::string fmt_g17(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("fmt_g17: non-finite value");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

struct JsonValue::Impl {
    using Object = std::vector<std::pair<std::string, JsonValue>>;
    using Array = std::vector<JsonValue>;
    std::variant<std::nullptr_t, Object, Array, std::string, double, std::int64_t, bool> data =
        nullptr;
};

JsonValue::JsonValue() : impl_(std::make_shared<Impl>()) {}

JsonValue JsonValue::object() {
    JsonValue v;
    v.impl_->data = Impl::Object{};
    return v;
}

JsonValue JsonValue::array() {
    JsonValue v;
    v.impl_->data = Impl::Array{};
    return v;
}

JsonValue JsonValue::str(std::string s) {
    JsonValue v;
    v.impl_->data = std::move(s);
    return v;
}

JsonValue JsonValue::num(double d) {
    if (!std::isfinite(d)) throw std::invalid_argument("JsonValue::num: non-finite value");
    JsonValue v;
    v.impl_->data = d;
    return v;
}

JsonValue JsonValue::integer(std::int64_t i) {
    JsonValue v;
    v.impl_->data = i;
    return v;
}

JsonValue JsonValue::boolean(bool b) {
    JsonValue v;
    v.impl_->data = b;
    return v;
}

JsonValue& JsonValue::set(const std::string& key, JsonValue v) {
    auto* obj = std::get_if<Impl::Object>(&impl_->data);
    if (!obj) throw std::logic_error("JsonValue::set on non-object");
    obj->emplace_back(key, std::move(v));
    return *this;
}

JsonValue& JsonValue::push(JsonValue v) {
    auto* arr = std::get_if<Impl::Array>(&impl_->data);
    if (!arr) throw std::logic_error("JsonValue::push on non-array");
    arr->push_back(std::move(v));
    return *this;
}

bool JsonValue::is_object() const { return std::holds_alternative<Impl::Object>(impl_->data); }
bool JsonValue::is_array() const { return std::holds_alternative<Impl::Array>(impl_->data); }

namespace {

void write_escaped(std::ostream& os, const std::string& s) {
    os << '"';
    for (const char c : s) {
        switch (c) {
            case '"': os << "\\\""; break;
            case '\\': os << "\\\\"; break;
            case '\n': os << "\\n"; break;
            case '\r': os << "\\r"; break;
            case '\t': os << "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    os << buf;
                } else {
                    os << c;
                }
        }
    }
    os << '"';
}

void pad(std::ostream& os, int depth) {
    for (int i = 0; i < depth; ++i) os << "  ";
}

} // namespace

void JsonValue::write(std::ostream& os, int indent) const {
    const auto& data = impl_->data;
    if (std::holds_alternative<std::nullptr_t>(data)) {
        os << "null";
    } else if (const auto* obj = std::get_if<Impl::Object>(&data)) {
        if (obj->empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        for (std::size_t i = 0; i < obj->size(); ++i) {
            pad(os, indent + 1);
            write_escaped(os, (*obj)[i].first);
            os << ": ";
            (*obj)[i].second.write(os, indent + 1);
            if (i + 1 < obj->size()) os << ',';
            os << '\n';
        }
        pad(os, indent);
        os << '}';
    } else if (const auto* arr = std::get_if<Impl::Array>(&data)) {
        if (arr->empty()) {
            os << "[]";
            return;
        }
        os << "[\n";
        for (std::size_t i = 0; i < arr->size(); ++i) {
            pad(os, indent + 1);
            (*arr)[i].write(os, indent + 1);
            if (i + 1 < arr->size()) os << ',';
            os << '\n';
        }
        pad(os, indent);
        os << ']';
    } else if (const auto* s = std::get_if<std::string>(&data)) {
        write_escaped(os, *s);
    } else if (const auto* d = std::get_if<double>(&data)) {
        os << fmt_g17(*d);
    } else if (const auto* i = std::get_if<std::int64_t>(&data)) {
        os << *i;
    } else {
        os << (std::get<bool>(data) ? "true" : "false");
    }
}

std::string JsonValue::dump() const {
    std::ostringstream os;
    write(os);
    os << '\n';
    return os.str();
}

void write_csv(std::ostream& os, const std::vector<std::string>& comments, const CsvRow& header,
               const std::vector<CsvRow>& rows) {
    for (const auto& c : comments) os << "# " << c << '\n';
    auto emit_row = [&os](const CsvRow& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << csv_escape(row[i]);
        }
        os << '\n';
    };
    emit_row(header);
    for (const auto& row : rows) emit_row(row);
}

} // namespace dosc::io
