#include "matrix_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace anyon::cli {

namespace {

Integer parse_integer_token(const std::string& tok, std::size_t pos) {
    Integer v;
    if (tok.empty() || v.set_str(tok, 10) != 0) throw ParseError("expected an integer, got '" + tok + "'", pos);
    return v;
}

Integer json_integer(const nlohmann::json& j, std::size_t pos) {
    if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    if (j.is_string()) return parse_integer_token(j.get<std::string>(), pos);
    throw ParseError("matrix entries must be integers", pos);
}

void check_matrix(const IntegerMatrix& m) {
    if (m.rows() == 0) throw ParseError("empty matrix", 0);
    if (!m.is_symmetric()) throw ParseError("matrix is not symmetric", 0);
}

MatrixFile parse_structured(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
    if (!j.is_object() || !j.contains("gram")) throw ParseError("structured file needs a \"gram\" field", 0);
    const auto& g = j["gram"];
    if (!g.is_array() || g.empty()) throw ParseError("\"gram\" must be a nonempty array of rows", 0);
    const std::size_t n = g.size();
    MatrixFile f;
    f.gram = IntegerMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!g[i].is_array() || g[i].size() != n)
            throw ParseError("row " + std::to_string(i) + " does not have " + std::to_string(n) + " entries", 0);
        for (std::size_t k = 0; k < n; ++k) f.gram(i, k) = json_integer(g[i][k], 0);
    }
    if (j.contains("target")) {
        if (!j["target"].is_string()) throw ParseError("\"target\" must be a string", 0);
        f.target = j["target"].get<std::string>();
    }
    if (j.contains("comment")) {
        if (!j["comment"].is_string()) throw ParseError("\"comment\" must be a string", 0);
        f.comment = j["comment"].get<std::string>();
    }
    check_matrix(f.gram);
    return f;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

MatrixFile parse_plain(const std::string& text) {
    MatrixFile f;
    std::vector<std::vector<Integer>> rows;
    std::istringstream in(text);
    std::string line;
    std::size_t offset = 0;
    while (std::getline(in, line)) {
        const std::size_t line_start = offset;
        offset += line.size() + 1;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            const std::string body = trim(t.substr(1));
            if (body.rfind("target:", 0) == 0) f.target = trim(body.substr(7));
            else if (body.rfind("comment:", 0) == 0) f.comment = trim(body.substr(8));
            continue;
        }
        std::istringstream ls(t);
        std::string tok;
        std::vector<Integer> row;
        while (ls >> tok) row.push_back(parse_integer_token(tok, line_start));
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError("ragged row", line_start);
        rows.push_back(std::move(row));
    }
    const std::size_t n = rows.size();
    if (n == 0 || rows.front().size() != n) throw ParseError("matrix is not square", 0);
    f.gram = IntegerMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) f.gram(i, k) = rows[i][k];
    check_matrix(f.gram);
    return f;
}

std::string json_number(const Integer& v) {
    // entries beyond 64 bits are written as strings so that they survive JSON readers
    if (v.fits_slong_p()) return v.get_str();
    return "\"" + v.get_str() + "\"";
}

}  // namespace

FileFormat parse_format(const std::string& name) {
    if (name == "structured") return FileFormat::Structured;
    if (name == "plain") return FileFormat::Plain;
    throw InvalidArgument("unknown format '" + name + "' (expected structured or plain)");
}

MatrixFile parse_matrix_text(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("empty input", 0);
    if (text[first] == '{') return parse_structured(text);
    return parse_plain(text);
}

MatrixFile load_matrix_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("cannot read '" + path + "'");
    return parse_matrix_text(ss.str());
}

std::string render_matrix_file(const MatrixFile& file, FileFormat format) {
    std::ostringstream os;
    const IntegerMatrix& g = file.gram;
    if (format == FileFormat::Plain) {
        if (file.target) os << "# target: " << *file.target << '\n';
        if (file.comment) os << "# comment: " << *file.comment << '\n';
        for (std::size_t i = 0; i < g.rows(); ++i) {
            for (std::size_t k = 0; k < g.cols(); ++k) os << (k ? " " : "") << g(i, k).get_str();
            os << '\n';
        }
        return os.str();
    }
    os << "{\n  \"gram\": [\n";
    for (std::size_t i = 0; i < g.rows(); ++i) {
        os << "    [";
        for (std::size_t k = 0; k < g.cols(); ++k) os << (k ? ", " : "") << json_number(g(i, k));
        os << ']' << (i + 1 < g.rows() ? "," : "") << '\n';
    }
    os << "  ]";
    if (file.target) os << ",\n  \"target\": " << nlohmann::json(*file.target).dump();
    if (file.comment) os << ",\n  \"comment\": " << nlohmann::json(*file.comment).dump();
    os << "\n}\n";
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("cannot write '" + path + "'");
}

}  // namespace anyon::cli
