#include "bcslab/node_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace bcslab {

namespace {

constexpr const char* kNodeHeader = "bcslab-node 1";
constexpr const char* kGainsHeader = "bcslab-gains 1";

void write_matrix(std::ostream& os, const char* name, const ComplexMatrix& m) {
    os << "matrix " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << format_double(m(i, j).real()) << ',' << format_double(m(i, j).imag());
        }
        os << '\n';
    }
}

struct Parser {
    std::istream& is;
    int lineno = 0;

    std::string next_line() {
        std::string line;
        while (std::getline(is, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            return line;
        }
        throw IoError("unexpected end of file at line " + std::to_string(lineno));
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw IoError("parse error at line " + std::to_string(lineno) + ": " + what);
    }
};

double parse_double(Parser& p, const std::string& tok) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size()) p.fail("malformed number '" + tok + "'");
    if (!std::isfinite(v)) p.fail("non-finite number '" + tok + "'");
    return v;
}

ComplexMatrix read_matrix(Parser& p, Index rows, Index cols) {
    ComplexMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        std::istringstream row(p.next_line());
        for (Index j = 0; j < cols; ++j) {
            std::string tok;
            if (!(row >> tok)) p.fail("matrix row too short");
            const auto comma = tok.find(',');
            if (comma == std::string::npos) p.fail("expected re,im pair");
            m(i, j) = Complex(parse_double(p, tok.substr(0, comma)),
                              parse_double(p, tok.substr(comma + 1)));
        }
        std::string extra;
        if (row >> extra) p.fail("matrix row too long");
    }
    return m;
}

struct Document {
    std::map<std::string, ComplexMatrix> matrices;
    std::map<std::string, std::string> labels;
};

Document read_document(Parser& p, const char* header) {
    if (p.next_line() != header) p.fail(std::string("expected header '") + header + "'");
    Document doc;
    for (;;) {
        std::string line = p.next_line();
        if (line == "end") break;
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        if (kind == "label") {
            std::string key;
            ls >> key;
            std::string value;
            std::getline(ls, value);
            if (!value.empty() && value.front() == ' ') value.erase(0, 1);
            doc.labels[key] = value;
        } else if (kind == "matrix") {
            std::string name;
            Index rows = -1, cols = -1;
            ls >> name >> rows >> cols;
            if (name.empty() || rows < 0 || cols < 0) p.fail("malformed matrix header");
            if (doc.matrices.count(name)) p.fail("duplicate matrix '" + name + "'");
            doc.matrices[name] = read_matrix(p, rows, cols);
        } else {
            p.fail("unknown directive '" + kind + "'");
        }
    }
    return doc;
}

const ComplexMatrix& require(const Document& doc, Parser& p, const std::string& name) {
    auto it = doc.matrices.find(name);
    if (it == doc.matrices.end()) p.fail("missing matrix '" + name + "'");
    return it->second;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void save_node(const DiscreteBoundaryNode& node, std::ostream& os) {
    os << kNodeHeader << '\n';
    os << "label Ub " << node.labels.boundary_input << '\n';
    os << "label U " << node.labels.input << '\n';
    os << "label X " << node.labels.state << '\n';
    os << "label Y " << node.labels.output << '\n';
    write_matrix(os, "opA", node.op_a);
    write_matrix(os, "opB", node.op_b);
    write_matrix(os, "opC", node.op_c);
    write_matrix(os, "opQ", node.op_q);
    write_matrix(os, "opBi", node.op_bi);
    write_matrix(os, "gram", node.gram.matrix());
    write_matrix(os, "opTest", node.test);
    os << "end\n";
}

DiscreteBoundaryNode load_node(std::istream& is) {
    Parser p{is};
    Document doc = read_document(p, kNodeHeader);
    SpaceLabels labels;
    if (doc.labels.count("Ub")) labels.boundary_input = doc.labels["Ub"];
    if (doc.labels.count("U")) labels.input = doc.labels["U"];
    if (doc.labels.count("X")) labels.state = doc.labels["X"];
    if (doc.labels.count("Y")) labels.output = doc.labels["Y"];
    GramMatrix gram;
    try {
        gram = GramMatrix(require(doc, p, "gram"));
    } catch (const NumericError& e) {
        throw IoError(std::string("invalid Gram matrix: ") + e.what());
    }
    if (doc.matrices.count("opTest")) {
        return make_node_with_test(require(doc, p, "opA"), require(doc, p, "opB"),
                                   require(doc, p, "opC"), require(doc, p, "opQ"),
                                   require(doc, p, "opBi"), std::move(gram),
                                   doc.matrices["opTest"], labels);
    }
    return make_node(require(doc, p, "opA"), require(doc, p, "opB"),
                     require(doc, p, "opC"), require(doc, p, "opQ"),
                     require(doc, p, "opBi"), std::move(gram), labels);
}

void save_node(const DiscreteBoundaryNode& node, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    save_node(node, os);
    if (!os.good()) throw IoError("write failed for '" + path + "'");
}

DiscreteBoundaryNode load_node(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open '" + path + "'");
    return load_node(is);
}

void save_gains(const GainSet& gains, std::ostream& os) {
    os << kGainsHeader << '\n';
    write_matrix(os, "opK", gains.op_k);
    write_matrix(os, "opL", gains.op_l);
    write_matrix(os, "opLi", gains.op_li);
    os << "end\n";
}

GainSet load_gains(std::istream& is) {
    Parser p{is};
    Document doc = read_document(p, kGainsHeader);
    GainSet g;
    g.op_k = require(doc, p, "opK");
    g.op_l = require(doc, p, "opL");
    g.op_li = require(doc, p, "opLi");
    return g;
}

void save_gains(const GainSet& gains, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    save_gains(gains, os);
    if (!os.good()) throw IoError("write failed for '" + path + "'");
}

GainSet load_gains(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open '" + path + "'");
    return load_gains(is);
}

}  // namespace bcslab
