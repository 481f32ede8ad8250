#include "pdm/timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>
#include <json.hpp>

#include "pdm/common.hpp"

namespace pdm {

std::vector<double> MultivariateSeries::column(int dim) const {
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& row : values) out.push_back(row[dim - 1]);
    return out;
}

InputFormat parse_format(const std::string& name) {
    if (name == "long_csv" || name == "csv") return InputFormat::LongCsv;
    if (name == "json_dir" || name == "json") return InputFormat::JsonDir;
    throw ValidationError("unknown input format '" + name + "'");
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_real(const std::string& s, bool& ok) {
    double v = 0;
    const char* b = s.data();
    const char* e = b + s.size();
    while (b < e && *b == ' ') ++b;
    while (e > b && e[-1] == ' ') --e;
    if (b < e && *b == '+') ++b;
    auto [p, ec] = std::from_chars(b, e, v);
    ok = ec == std::errc() && p == e && b != e;
    return v;
}

std::string trim(std::string s) {
    auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && ws(s.back())) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && ws(s[i])) ++i;
    return s.substr(i);
}

struct ClassMap {
    std::unordered_map<std::string, int> ids;
    std::vector<std::string> names;
    int get(const std::string& s) {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(names.size());
        ids.emplace(s, id);
        names.push_back(s);
        return id;
    }
};

}  // namespace

Dataset load_long_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open dataset '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    auto header = split_csv(line);
    for (auto& h : header) h = trim(h);
    if (header.size() < 4 || header[0] != "series_id" || header[1] != "t" || header.back() != "class")
        throw ParseError(path + ":1: header must be series_id,t,<dims...>,class");
    std::vector<std::string> dims(header.begin() + 2, header.end() - 1);

    struct Row {
        long t;
        std::vector<double> v;
        int cls;
    };
    std::map<std::string, std::vector<Row>> by_id;
    ClassMap classes;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto f = split_csv(line);
        if (f.size() < header.size())
            throw ParseError(fmt::format("{}:{}: missing column '{}'", path, lineno, header[f.size()]));
        if (f.size() > header.size())
            throw ParseError(fmt::format("{}:{}: expected {} columns, found {}", path, lineno, header.size(), f.size()));
        Row r;
        bool ok = false;
        double t = parse_real(f[1], ok);
        if (!ok || t < 1 || t != static_cast<double>(static_cast<long>(t)))
            throw ParseError(fmt::format("{}:{}: column 't' must be a positive integer", path, lineno));
        r.t = static_cast<long>(t);
        for (std::size_t k = 0; k < dims.size(); ++k) {
            double v = parse_real(f[k + 2], ok);
            if (!ok) throw ParseError(fmt::format("{}:{}: column '{}' is not a number", path, lineno, dims[k]));
            r.v.push_back(v);
        }
        std::string c = trim(f.back());
        if (c.empty()) throw ParseError(fmt::format("{}:{}: missing column 'class'", path, lineno));
        r.cls = classes.get(c);
        by_id[trim(f[0])].push_back(std::move(r));
    }
    Dataset ds;
    for (auto& [id, rows] : by_id) {
        std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.t < b.t; });
        for (std::size_t k = 0; k < rows.size(); ++k)
            if (rows[k].t != rows[0].t + static_cast<long>(k))
                throw ValidationError(fmt::format("{}: series '{}' has a gap or duplicate at t={}", path, id, rows[k].t));
        MultivariateSeries s;
        s.id = id;
        s.dim_names = dims;
        for (auto& r : rows) {
            s.values.push_back(std::move(r.v));
            s.classes.push_back(r.cls);
        }
        ds.series.push_back(std::move(s));
    }
    ds.class_names = classes.names;
    return ds;
}

Dataset load_json_dir(const std::string& path) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(path)) throw ValidationError("json_dir '" + path + "' is not a directory");
    std::vector<fs::path> files;
    for (const auto& ent : fs::directory_iterator(path))
        if (ent.is_regular_file() && ent.path().extension() == ".json") files.push_back(ent.path());
    std::sort(files.begin(), files.end());
    ClassMap classes;
    Dataset ds;
    std::vector<std::string> dims0;
    for (const auto& file : files) {
        std::ifstream in(file);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const std::exception& ex) {
            throw ParseError(file.string() + ": " + ex.what());
        }
        auto need = [&](const char* key) -> const nlohmann::json& {
            if (!j.contains(key)) throw ParseError(file.string() + ": missing field '" + key + "'");
            return j.at(key);
        };
        MultivariateSeries s;
        const auto& id = need("id");
        s.id = id.is_string() ? id.get<std::string>() : id.dump();
        s.dim_names = need("dims").get<std::vector<std::string>>();
        const auto& rows = need("rows");
        const auto& cls = need("class");
        if (!rows.is_array() || !cls.is_array() || rows.size() != cls.size() || rows.empty())
            throw ParseError(file.string() + ": 'rows' and 'class' must be non-empty arrays of equal length");
        for (std::size_t t = 0; t < rows.size(); ++t) {
            if (!rows[t].is_array() || rows[t].size() != s.dim_names.size())
                throw ParseError(fmt::format("{}: rows[{}] must have {} values", file.string(), t, s.dim_names.size()));
            std::vector<double> r;
            for (const auto& v : rows[t]) {
                if (!v.is_number()) throw ParseError(fmt::format("{}: rows[{}] holds a non-number", file.string(), t));
                r.push_back(v.get<double>());
            }
            s.values.push_back(std::move(r));
            s.classes.push_back(classes.get(cls[t].is_string() ? cls[t].get<std::string>() : cls[t].dump()));
        }
        if (ds.series.empty()) dims0 = s.dim_names;
        else if (s.dim_names != dims0) throw ParseError(file.string() + ": dims differ from other series");
        ds.series.push_back(std::move(s));
    }
    std::sort(ds.series.begin(), ds.series.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < ds.series.size(); ++i)
        if (ds.series[i].id == ds.series[i - 1].id) throw ValidationError("duplicate series id '" + ds.series[i].id + "'");
    ds.class_names = classes.names;
    return ds;
}

Dataset load_dataset(const std::string& path, InputFormat fmt) {
    if (!std::filesystem::exists(path)) throw ValidationError("dataset path '" + path + "' does not exist");
    return fmt == InputFormat::LongCsv ? load_long_csv(path) : load_json_dir(path);
}

MultivariateSeries project(const MultivariateSeries& T, Interval iv) {
    if (iv.b < 1 || iv.e < iv.b || iv.e > T.length())
        throw std::out_of_range(fmt::format("projection [{},{}] outside series of length {}", iv.b, iv.e, T.length()));
    MultivariateSeries out;
    out.id = T.id;
    out.dim_names = T.dim_names;
    out.values.assign(T.values.begin() + (iv.b - 1), T.values.begin() + iv.e);
    out.classes.assign(T.classes.begin() + (iv.b - 1), T.classes.begin() + iv.e);
    return out;
}

std::vector<ClassSegment> class_segments(const MultivariateSeries& T) {
    std::vector<ClassSegment> out;
    if (T.length() == 0) return out;
    for (auto iv : maximal_intervals([&](int t) { return T.class_at(t); }, {1, T.length()}))
        out.push_back({iv, T.class_at(iv.b), T.id});
    return out;
}

}  // namespace pdm
