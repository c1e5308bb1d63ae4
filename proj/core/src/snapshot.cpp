#include "keps/snapshot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace keps {

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string header_line(const GridSpec& g, double t, const std::string& name) {
    std::string s = "# keps-field v1 dim=" + std::to_string(g.dim) + " n=";
    for (int a = 0; a < g.dim; ++a) s += (a ? "," : "") + std::to_string(g.n[a]);
    s += " len=";
    for (int a = 0; a < g.dim; ++a) s += (a ? "," : "") + format_full(g.length[a]);
    s += " t=" + format_full(t) + " name=" + name;
    return s;
}

// values in node order; vpn values per node, one axis-0 run per output line
std::string body_text(const GridSpec& g, const std::vector<double>& flat, int vpn) {
    const std::size_t nn = g.node_count();
    const std::size_t rows = nn / static_cast<std::size_t>(g.n[0]);
    std::string out;
    out.reserve(flat.size() * 20);
    std::size_t node = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        for (int i = 0; i < g.n[0]; ++i, ++node) {
            for (int c = 0; c < vpn; ++c) {
                if (i != 0 || c != 0) out += ' ';
                out += format_full(flat[static_cast<std::size_t>(c) * nn + node]);
            }
        }
        out += '\n';
    }
    return out;
}

std::string parse_field(const std::string& header, const std::string& key) {
    const std::string tag = " " + key + "=";
    const std::size_t p = header.find(tag);
    if (p == std::string::npos)
        throw InvalidArgument("snapshot header missing " + key + "=");
    const std::size_t b = p + tag.size();
    std::size_t e = header.find(' ', b);
    if (e == std::string::npos) e = header.size();
    return header.substr(b, e - b);
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

void check_grid(const SnapshotInfo& info, const GridSpec& g, const std::string& path) {
    bool ok = info.dim == g.dim;
    for (int a = 0; ok && a < g.dim; ++a)
        ok = info.n[a] == g.n[a] && std::abs(info.length[a] - g.length[a]) <= 1e-12 * g.length[a];
    if (!ok) throw InvalidArgument("snapshot " + path + " does not match the configured grid");
}

std::vector<double> read_values(std::ifstream& in, std::size_t expected, const std::string& path) {
    std::vector<double> vals;
    vals.reserve(expected);
    double v;
    while (in >> v) vals.push_back(v);
    if (vals.size() != expected)
        throw InvalidArgument("snapshot " + path + ": expected " + std::to_string(expected) +
                              " values, found " + std::to_string(vals.size()));
    for (double x : vals)
        if (!std::isfinite(x))
            throw InvalidArgument("snapshot " + path + ": non-finite value");
    return vals;
}

} // namespace

void atomic_write_text(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidArgument("cannot open " + tmp + " for writing");
        out << content;
        if (!out) throw InvalidArgument("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw InvalidArgument("rename failed for " + path);
}

void write_snapshot(const std::string& path, const ScalarField& f, double t,
                    const std::string& name) {
    f.require_finite("write_snapshot");
    std::string text = header_line(f.grid(), t, name) + "\n" + body_text(f.grid(), f.raw(), 1);
    atomic_write_text(path, text);
}

void write_snapshot(const std::string& path, const VectorField& f, double t,
                    const std::string& name) {
    f.require_finite("write_snapshot");
    std::string text =
        header_line(f.grid(), t, name) + "\n" + body_text(f.grid(), f.raw(), f.dim());
    atomic_write_text(path, text);
}

SnapshotInfo read_snapshot_header(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open snapshot " + path);
    std::string header;
    std::getline(in, header);
    if (header.rfind("# keps-field v1 ", 0) != 0)
        throw InvalidArgument("snapshot " + path + " is not keps-field v1");
    SnapshotInfo info;
    info.dim = std::stoi(parse_field(header, "dim"));
    if (info.dim < 1 || info.dim > 3) throw InvalidArgument("snapshot dim out of range");
    auto ns = parse_list(parse_field(header, "n"));
    auto ls = parse_list(parse_field(header, "len"));
    if (static_cast<int>(ns.size()) != info.dim || static_cast<int>(ls.size()) != info.dim)
        throw InvalidArgument("snapshot " + path + ": n/len arity mismatch");
    for (int a = 0; a < info.dim; ++a) {
        info.n[a] = static_cast<int>(ns[a]);
        info.length[a] = ls[a];
    }
    info.t = std::stod(parse_field(header, "t"));
    info.name = parse_field(header, "name");
    return info;
}

ScalarField read_scalar_snapshot(const std::string& path, const GridSpec& g, double* t) {
    SnapshotInfo info = read_snapshot_header(path);
    check_grid(info, g, path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    auto vals = read_values(in, g.node_count(), path);
    ScalarField f(g);
    std::copy(vals.begin(), vals.end(), f.values().begin());
    if (t != nullptr) *t = info.t;
    return f;
}

VectorField read_vector_snapshot(const std::string& path, const GridSpec& g, double* t) {
    SnapshotInfo info = read_snapshot_header(path);
    check_grid(info, g, path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    const std::size_t nn = g.node_count();
    auto vals = read_values(in, nn * static_cast<std::size_t>(g.dim), path);
    VectorField f(g);
    // file interleaves components per node; storage is component-major
    std::size_t idx = 0;
    for (std::size_t node = 0; node < nn; ++node)
        for (int c = 0; c < g.dim; ++c) f.comp(c, node) = vals[idx++];
    if (t != nullptr) *t = info.t;
    return f;
}

} // namespace keps
