#include "decoupling/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace decoupling::io {

namespace {

using nlohmann::json;

std::string line_of(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') ++line;
    }
    return std::to_string(line);
}

json parse_document(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& err) {
        throw ParseError(origin + ":" + line_of(text, err.byte), err.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(path, "cannot open file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int require_int(const json& value, const std::string& origin, const std::string& field) {
    if (!value.is_number_integer() && !value.is_number_unsigned()) {
        throw ParseError(origin + ": field '" + field + "'", "must be an integer");
    }
    return value.get<int>();
}

double require_real(const json& value, const std::string& origin, const std::string& field) {
    if (!value.is_number()) {
        throw ParseError(origin + ": field '" + field + "'", "must be a number");
    }
    return value.get<double>();
}

}  // namespace

BlockGaussianSpec parse_spec(const std::string& text, const std::string& origin) {
    const json doc = parse_document(text, origin);
    if (!doc.is_object()) {
        throw ParseError(origin, "top-level value must be an object");
    }
    if (!doc.contains("dims")) {
        throw ParseError(origin + ": field 'dims'", "is required");
    }
    const json& dims = doc["dims"];
    if (!dims.is_array() || dims.empty()) {
        throw ParseError(origin + ": field 'dims'", "must be a nonempty integer array");
    }

    BlockGaussianSpec spec;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        const std::string field = "dims[" + std::to_string(i) + "]";
        const int d = require_int(dims[i], origin, field);
        if (d < 1) {
            throw ParseError(origin + ": field '" + field + "'", "must be >= 1");
        }
        spec.dims.push_back(d);
    }

    const int n = spec.vector_count();
    if (doc.contains("cross")) {
        const json& cross = doc["cross"];
        if (!cross.is_array()) {
            throw ParseError(origin + ": field 'cross'", "must be an array");
        }
        for (std::size_t e = 0; e < cross.size(); ++e) {
            const std::string entry = "cross[" + std::to_string(e) + "]";
            const json& item = cross[e];
            if (!item.is_object()) {
                throw ParseError(origin + ": field '" + entry + "'", "must be an object");
            }
            for (const char* key : {"a", "b", "matrix"}) {
                if (!item.contains(key)) {
                    throw ParseError(origin + ": field '" + entry + "." + key + "'",
                                     "is required");
                }
            }
            const int a = require_int(item["a"], origin, entry + ".a");
            const int b = require_int(item["b"], origin, entry + ".b");
            if (a < 1 || a > n || b < 1 || b > n) {
                throw ParseError(origin + ": field '" + entry + "'",
                                 "vector labels must be in [1, " + std::to_string(n) + "]");
            }
            if (a >= b) {
                throw ParseError(origin + ": field '" + entry + "'",
                                 "requires a < b (1-based upper-triangular pairs)");
            }
            if (spec.cross.count({a - 1, b - 1}) != 0) {
                throw ParseError(origin + ": field '" + entry + "'",
                                 "duplicate pair (" + std::to_string(a) + ", " +
                                     std::to_string(b) + ")");
            }

            const json& rows = item["matrix"];
            const std::size_t want_rows = static_cast<std::size_t>(spec.dims[a - 1]);
            const std::size_t want_cols = static_cast<std::size_t>(spec.dims[b - 1]);
            if (!rows.is_array() || rows.size() != want_rows) {
                throw ParseError(origin + ": field '" + entry + ".matrix'",
                                 "must have " + std::to_string(want_rows) + " rows");
            }
            Matrix block(want_rows, want_cols);
            for (std::size_t i = 0; i < want_rows; ++i) {
                const json& row = rows[i];
                const std::string row_field =
                    entry + ".matrix[" + std::to_string(i) + "]";
                if (!row.is_array() || row.size() != want_cols) {
                    throw ParseError(origin + ": field '" + row_field + "'",
                                     "must have " + std::to_string(want_cols) + " entries");
                }
                for (std::size_t j = 0; j < want_cols; ++j) {
                    block(i, j) = require_real(
                        row[j], origin, row_field + "[" + std::to_string(j) + "]");
                }
            }
            spec.cross[{a - 1, b - 1}] = std::move(block);
        }
    }
    return spec;
}

BlockGaussianSpec load_spec(const std::string& path) {
    return parse_spec(read_file(path), path);
}

ChaosExpansion parse_expansion(const std::string& text, const BlockGaussianSpec& spec,
                               const std::string& origin) {
    const json doc = parse_document(text, origin);
    if (!doc.is_object() || !doc.contains("vectors") || !doc["vectors"].is_array()) {
        throw ParseError(origin + ": field 'vectors'", "is required and must be an array");
    }

    ChaosExpansion expansion(spec.dims);
    const json& vectors = doc["vectors"];
    for (std::size_t v = 0; v < vectors.size(); ++v) {
        const std::string entry = "vectors[" + std::to_string(v) + "]";
        const json& item = vectors[v];
        if (!item.is_object() || !item.contains("alpha") || !item.contains("terms")) {
            throw ParseError(origin + ": field '" + entry + "'",
                             "must be an object with 'alpha' and 'terms'");
        }
        const int alpha = require_int(item["alpha"], origin, entry + ".alpha");
        if (alpha < 1 || alpha > spec.vector_count()) {
            throw ParseError(origin + ": field '" + entry + ".alpha'",
                             "must be in [1, " + std::to_string(spec.vector_count()) + "]");
        }
        const json& terms = item["terms"];
        if (!terms.is_array()) {
            throw ParseError(origin + ": field '" + entry + ".terms'", "must be an array");
        }
        for (std::size_t t = 0; t < terms.size(); ++t) {
            const std::string term_field = entry + ".terms[" + std::to_string(t) + "]";
            const json& term = terms[t];
            if (!term.is_object() || !term.contains("index") || !term.contains("coeff")) {
                throw ParseError(origin + ": field '" + term_field + "'",
                                 "must be an object with 'index' and 'coeff'");
            }
            const json& index_json = term["index"];
            if (!index_json.is_array()) {
                throw ParseError(origin + ": field '" + term_field + ".index'",
                                 "must be an integer array");
            }
            std::vector<int> entries;
            for (std::size_t i = 0; i < index_json.size(); ++i) {
                const int k = require_int(index_json[i], origin,
                                          term_field + ".index[" + std::to_string(i) + "]");
                if (k < 0) {
                    throw ParseError(origin + ": field '" + term_field + ".index'",
                                     "entries must be nonnegative");
                }
                entries.push_back(k);
            }
            const MultiIndex index{std::move(entries)};
            if (index.dimension() != spec.dims[static_cast<std::size_t>(alpha - 1)]) {
                throw ParseError(origin + ": field '" + term_field + ".index'",
                                 "must have " +
                                     std::to_string(spec.dims[static_cast<std::size_t>(alpha - 1)]) +
                                     " entries for vector " + std::to_string(alpha));
            }
            if (index.degree() == 0) {
                throw ParseError(origin + ": field '" + term_field + ".index'",
                                 "degree-0 terms are not allowed: expansion functions must "
                                 "be mean-zero");
            }
            if (expansion.terms(alpha - 1).count(index) != 0) {
                throw ParseError(origin + ": field '" + term_field + ".index'",
                                 "duplicate index for vector " + std::to_string(alpha));
            }
            expansion.set(alpha - 1, index,
                          require_real(term["coeff"], origin, term_field + ".coeff"));
        }
    }
    return expansion;
}

ChaosExpansion load_expansion(const std::string& path, const BlockGaussianSpec& spec) {
    return parse_expansion(read_file(path), spec, path);
}

std::string format_real(double value, int significant) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*g", significant, value);
    return buffer;
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buffer[8];
                    std::snprintf(buffer, sizeof(buffer), "\\u%04x", c);
                    out += buffer;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void write_value(std::string& out, const json& value, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    switch (value.type()) {
        case json::value_t::null:
            out += "null";
            break;
        case json::value_t::boolean:
            out += value.get<bool>() ? "true" : "false";
            break;
        case json::value_t::number_integer:
            out += std::to_string(value.get<std::int64_t>());
            break;
        case json::value_t::number_unsigned:
            out += std::to_string(value.get<std::uint64_t>());
            break;
        case json::value_t::number_float: {
            const double x = value.get<double>();
            out += std::isfinite(x) ? format_real(x, 17) : "null";
            break;
        }
        case json::value_t::string:
            append_escaped(out, value.get<std::string>());
            break;
        case json::value_t::array: {
            if (value.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            for (std::size_t i = 0; i < value.size(); ++i) {
                out += pad;
                write_value(out, value[i], indent, depth + 1);
                if (i + 1 < value.size()) out += ',';
                out += '\n';
            }
            out += close_pad + "]";
            break;
        }
        case json::value_t::object: {
            if (value.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            std::size_t i = 0;
            for (const auto& [key, member] : value.items()) {
                out += pad;
                append_escaped(out, key);
                out += ": ";
                write_value(out, member, indent, depth + 1);
                if (++i < value.size()) out += ',';
                out += '\n';
            }
            out += close_pad + "}";
            break;
        }
        default:
            out += "null";
    }
}

}  // namespace

std::string write_json(const json& value, int indent) {
    std::string out;
    write_value(out, value, indent, 0);
    out += '\n';
    return out;
}

}  // namespace decoupling::io
