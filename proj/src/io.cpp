#include "brc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace brc::io {

using nlohmann::json;

namespace {

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return j;
}

Rational prob_from_json(const json& v, const std::string& path) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_number_float()) return rational_from_double(v.get<double>());
    throw std::runtime_error(path + ": probability must be a number or \"p/q\" string");
}

std::vector<Variable> vars_from_json(const json& arr, const std::string& path) {
    std::vector<Variable> vars;
    for (const auto& v : arr) {
        Variable var{v.at("name").get<std::string>(), v.at("size").get<int>()};
        if (var.size < 1) throw std::runtime_error(path + ": alphabet size must be >= 1");
        vars.push_back(std::move(var));
    }
    return vars;
}

// Conditional rows of a channel file, flattened in row-major input order.
std::vector<Rational> law_from_json(const json& j, const std::vector<Variable>& inputs,
                                    std::size_t row_size, const std::string& path) {
    std::size_t n_rows = 1;
    for (const auto& v : inputs) n_rows *= std::size_t(v.size);
    std::vector<Rational> law(n_rows * row_size);
    std::vector<bool> seen(n_rows, false);
    for (const auto& row : j.at("rows")) {
        const auto& given = row.at("given");
        if (given.size() != inputs.size())
            throw std::runtime_error(path + ": row 'given' arity mismatch");
        std::size_t idx = 0;
        for (std::size_t k = 0; k < inputs.size(); ++k) {
            int x = given[k].get<int>();
            if (x < 0 || x >= inputs[k].size)
                throw std::runtime_error(path + ": row 'given' symbol out of range");
            idx = idx * std::size_t(inputs[k].size) + std::size_t(x);
        }
        if (seen[idx]) throw std::runtime_error(path + ": duplicate channel row");
        seen[idx] = true;
        const auto& pmf = row.at("pmf");
        if (pmf.size() != row_size) throw std::runtime_error(path + ": row pmf size mismatch");
        Rational sum(0);
        for (std::size_t k = 0; k < row_size; ++k) {
            law[idx * row_size + k] = prob_from_json(pmf[k], path);
            if (law[idx * row_size + k] < 0)
                throw std::runtime_error(path + ": negative probability");
            sum += law[idx * row_size + k];
        }
        if (sum != 1) throw std::runtime_error(path + ": channel row does not sum to 1");
    }
    for (std::size_t i = 0; i < n_rows; ++i)
        if (!seen[i]) throw std::runtime_error(path + ": missing channel row");
    return law;
}

int out_size(const std::vector<Variable>& outs, const std::string& name, const std::string& path) {
    for (const auto& v : outs)
        if (v.name == name) return v.size;
    throw std::runtime_error(path + ": missing output variable " + name);
}

json vars_to_json(const std::vector<Variable>& vars) {
    json arr = json::array();
    for (const auto& v : vars) arr.push_back({{"name", v.name}, {"size", v.size}});
    return arr;
}

json law_rows_to_json(const std::vector<Variable>& inputs, const std::vector<Rational>& law,
                      std::size_t row_size) {
    std::size_t n_rows = law.size() / row_size;
    json rows = json::array();
    for (std::size_t i = 0; i < n_rows; ++i) {
        json given = json::array();
        std::size_t rem = i;
        std::vector<int> sym(inputs.size());
        for (std::size_t k = inputs.size(); k-- > 0;) {
            sym[k] = int(rem % std::size_t(inputs[k].size));
            rem /= std::size_t(inputs[k].size);
        }
        for (int s : sym) given.push_back(s);
        json pmf = json::array();
        for (std::size_t k = 0; k < row_size; ++k)
            pmf.push_back(rational_to_string(law[i * row_size + k]));
        rows.push_back({{"given", given}, {"pmf", pmf}});
    }
    return rows;
}

void write_json(const json& j, const std::string& path) {
    write_text_file(path, j.dump(2) + "\n");
}

// Fixed-width decimal formatting shared by CSV and SVG so identical regions
// always serialize to identical bytes.
std::string fmt(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", v);
    return buf;
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << content;
    if (!out) throw std::runtime_error(path + ": write failed");
}

Pmf load_pmf_json(const std::string& path) {
    json j = parse_file(path);
    auto vars = vars_from_json(j.at("variables"), path);
    std::vector<Rational> probs;
    for (const auto& v : j.at("probs")) probs.push_back(prob_from_json(v, path));
    try {
        return Pmf(std::move(vars), std::move(probs));
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void save_pmf_json(const Pmf& p, const std::string& path) {
    json j;
    j["variables"] = vars_to_json(p.variables());
    json probs = json::array();
    for (const auto& q : p.probs()) probs.push_back(rational_to_string(q));
    j["probs"] = probs;
    write_json(j, path);
}

AnyChannel load_channel_json(const std::string& path) {
    json j = parse_file(path);
    auto inputs = vars_from_json(j.at("inputs"), path);
    auto outputs = vars_from_json(j.at("outputs"), path);
    if (inputs.size() == 1) {
        BroadcastChannel ch;
        ch.nx = inputs[0].size;
        ch.ny1 = out_size(outputs, "Y1", path);
        ch.ny2 = out_size(outputs, "Y2", path);
        ch.law = law_from_json(j, inputs, std::size_t(ch.ny1) * ch.ny2, path);
        ch.validate();
        return ch;
    }
    if (inputs.size() == 2) {
        BrcCrChannel ch;
        ch.nx = inputs[0].size;
        ch.nx1 = inputs[1].size;
        ch.ny1 = out_size(outputs, "Y1", path);
        ch.nz1 = out_size(outputs, "Z1", path);
        ch.ny2 = out_size(outputs, "Y2", path);
        ch.law = law_from_json(j, inputs, ch.row_size(), path);
        ch.validate();
        return ch;
    }
    if (inputs.size() == 3) {
        BrcChannel ch;
        ch.nx = inputs[0].size;
        ch.nx1 = inputs[1].size;
        ch.nx2 = inputs[2].size;
        ch.ny1 = out_size(outputs, "Y1", path);
        ch.nz1 = out_size(outputs, "Z1", path);
        ch.ny2 = out_size(outputs, "Y2", path);
        ch.nz2 = out_size(outputs, "Z2", path);
        ch.law = law_from_json(j, inputs, ch.row_size(), path);
        ch.validate();
        return ch;
    }
    throw std::runtime_error(path + ": expected 1, 2 or 3 input variables");
}

void save_channel_json(const BroadcastChannel& ch, const std::string& path) {
    std::vector<Variable> inputs = {{"X", ch.nx}};
    json j;
    j["inputs"] = vars_to_json(inputs);
    j["outputs"] = vars_to_json({{"Y1", ch.ny1}, {"Y2", ch.ny2}});
    j["rows"] = law_rows_to_json(inputs, ch.law, std::size_t(ch.ny1) * ch.ny2);
    write_json(j, path);
}

void save_channel_json(const BrcCrChannel& ch, const std::string& path) {
    std::vector<Variable> inputs = {{"X", ch.nx}, {"X1", ch.nx1}};
    json j;
    j["inputs"] = vars_to_json(inputs);
    j["outputs"] = vars_to_json({{"Y1", ch.ny1}, {"Z1", ch.nz1}, {"Y2", ch.ny2}});
    j["rows"] = law_rows_to_json(inputs, ch.law, ch.row_size());
    write_json(j, path);
}

void save_channel_json(const BrcChannel& ch, const std::string& path) {
    std::vector<Variable> inputs = {{"X", ch.nx}, {"X1", ch.nx1}, {"X2", ch.nx2}};
    json j;
    j["inputs"] = vars_to_json(inputs);
    j["outputs"] =
        vars_to_json({{"Y1", ch.ny1}, {"Z1", ch.nz1}, {"Y2", ch.ny2}, {"Z2", ch.nz2}});
    j["rows"] = law_rows_to_json(inputs, ch.law, ch.row_size());
    write_json(j, path);
}

std::string region_to_csv(const RateRegion& region) {
    std::string out;
    for (const auto& v : region.vertices) {
        out += fmt(v[0]);
        out += ',';
        out += fmt(v[1]);
        if (region.dim == 3) {
            out += ',';
            out += fmt(v[2]);
        }
        out += '\n';
    }
    return out;
}

void save_region_csv(const RateRegion& region, const std::string& path) {
    write_text_file(path, region_to_csv(region));
}

RateRegion load_region_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    std::vector<RatePoint> pts;
    int dim = 0;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ss(line);
        RatePoint p{0, 0, 0};
        int n = 0;
        std::string field;
        while (std::getline(ss, field, ',')) {
            if (n >= 3)
                throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": too many fields");
            try {
                p[std::size_t(n)] = std::stod(field);
            } catch (const std::exception&) {
                throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": bad number '" + field + "'");
            }
            ++n;
        }
        if (n < 2)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": need 2 or 3 fields");
        if (dim == 0)
            dim = n;
        else if (dim != n)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": inconsistent dimension");
        pts.push_back(p);
    }
    if (dim == 0) throw std::runtime_error(path + ": empty region file");
    return hull_of(pts, dim);
}

std::string region_to_json(const RateRegion& region) {
    json j;
    j["dim"] = region.dim;
    json verts = json::array();
    for (const auto& v : region.vertices) {
        json pt = json::array();
        for (int k = 0; k < region.dim; ++k) pt.push_back(fmt(v[std::size_t(k)]));
        verts.push_back(pt);
    }
    j["vertices"] = verts;
    json hs = json::array();
    for (const auto& h : region.halfspaces) {
        json normal = json::array();
        for (int k = 0; k < region.dim; ++k) normal.push_back(fmt(h.normal[std::size_t(k)]));
        hs.push_back({{"normal", normal}, {"offset", fmt(h.offset)}});
    }
    j["halfspaces"] = hs;
    return j.dump(2) + "\n";
}

namespace {

// One 2-D frontier panel. Points are hull vertices sorted along the frontier.
std::string svg_panel(const std::vector<RatePoint>& verts, double x0, double y0, double side,
                      const std::string& xlabel, const std::string& ylabel) {
    double max_r = 1e-9;
    for (const auto& v : verts) max_r = std::max({max_r, v[0], v[1]});
    auto px = [&](double r) { return x0 + r / max_r * side; };
    auto py = [&](double r) { return y0 + side - r / max_r * side; };

    std::vector<RatePoint> sorted = verts;
    std::sort(sorted.begin(), sorted.end(), [](const RatePoint& a, const RatePoint& b) {
        if (a[0] != b[0]) return a[0] < b[0];
        return a[1] > b[1];
    });

    std::string s;
    s += "<rect x=\"" + fmt(x0) + "\" y=\"" + fmt(y0) + "\" width=\"" + fmt(side) +
         "\" height=\"" + fmt(side) + "\" fill=\"none\" stroke=\"black\"/>\n";
    std::string pts = fmt(px(0)) + "," + fmt(py(0));
    double top_r1 = 0;
    for (const auto& v : sorted) top_r1 = std::max(top_r1, v[1]);
    pts += " " + fmt(px(0)) + "," + fmt(py(top_r1));
    for (const auto& v : sorted)
        if (v[0] > 0 || v[1] > 0) pts += " " + fmt(px(v[0])) + "," + fmt(py(v[1]));
    s += "<polygon points=\"" + pts +
         "\" fill=\"#9ecae1\" fill-opacity=\"0.5\" stroke=\"#3182bd\"/>\n";
    s += "<text x=\"" + fmt(x0 + side / 2) + "\" y=\"" + fmt(y0 + side + 28) +
         "\" text-anchor=\"middle\" font-size=\"12\">" + xlabel + " [bits]</text>\n";
    s += "<text x=\"" + fmt(x0 - 30) + "\" y=\"" + fmt(y0 + side / 2) +
         "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 " + fmt(x0 - 30) +
         " " + fmt(y0 + side / 2) + ")\">" + ylabel + " [bits]</text>\n";
    s += "<text x=\"" + fmt(x0 + side) + "\" y=\"" + fmt(y0 + side + 14) +
         "\" text-anchor=\"end\" font-size=\"10\">" + fmt(max_r) + "</text>\n";
    return s;
}

std::vector<RatePoint> project_pts(const std::vector<RatePoint>& verts, int a, int b) {
    std::vector<RatePoint> out;
    for (const auto& v : verts) out.push_back({v[std::size_t(a)], v[std::size_t(b)], 0});
    return hull_of(out, 2).vertices;
}

}  // namespace

std::string region_to_svg(const RateRegion& region) {
    const double side = 240, margin = 60;
    int panels = region.dim == 2 ? 1 : 3;
    double width = margin + panels * (side + margin);
    double height = side + 2 * margin;
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) +
                    "\" height=\"" + fmt(height) + "\">\n";
    if (region.dim == 2) {
        s += svg_panel(region.vertices, margin, margin, side, "R0", "R1");
    } else {
        const int axes[3][2] = {{0, 1}, {0, 2}, {1, 2}};
        const char* names[3] = {"R0", "R1", "R2"};
        for (int k = 0; k < 3; ++k)
            s += svg_panel(project_pts(region.vertices, axes[k][0], axes[k][1]),
                           margin + k * (side + margin), margin, side, names[axes[k][0]],
                           names[axes[k][1]]);
    }
    s += "</svg>\n";
    return s;
}

void save_region_svg(const RateRegion& region, const std::string& path) {
    write_text_file(path, region_to_svg(region));
}

AuxSpec load_aux_spec_json(const std::string& path) {
    json j = parse_file(path);
    AuxSpec spec;
    auto get_int = [&](const char* key, int& field) {
        if (j.contains(key)) field = j.at(key).get<int>();
    };
    get_int("card_v0", spec.card_v0);
    get_int("card_u0", spec.card_u0);
    get_int("card_u1", spec.card_u1);
    get_int("card_u2", spec.card_u2);
    get_int("card_u3", spec.card_u3);
    get_int("card_u4", spec.card_u4);
    get_int("budget", spec.budget);
    get_int("refine_rounds", spec.refine_rounds);
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    spec.validate();
    return spec;
}

}  // namespace brc::io
