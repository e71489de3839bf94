#include "treepara/tree_io.hpp"

#include "treepara/csv.hpp"
#include "treepara/error.hpp"

#include <istream>

namespace treepara {

using nlohmann::json;

json tree_to_spec(const PartitionTree& tree) {
    json levels = json::array();
    for (const auto& level : tree.levels()) {
        json nodes = json::array();
        for (const auto& node : level) {
            nodes.push_back({{"k", node.index}, {"elements", node.elements}, {"children", node.children}});
        }
        levels.push_back(std::move(nodes));
    }
    return {{"n", tree.size()}, {"measure", to_string(tree.measure_mode())}, {"levels", levels}};
}

namespace {

std::vector<std::size_t> id_list(const json& value, const std::string& where) {
    if (!value.is_array()) throw Error(ErrorCode::SchemaError, where + " must be an array");
    std::vector<std::size_t> out;
    out.reserve(value.size());
    for (const auto& v : value) {
        if (!v.is_number_integer() || v.get<long long>() < 0) {
            throw Error(ErrorCode::SchemaError, where + " must hold non-negative integers");
        }
        out.push_back(v.get<std::size_t>());
    }
    return out;
}

}  // namespace

PartitionTree parse_tree_spec(const json& document) {
    if (!document.is_object()) throw Error(ErrorCode::SchemaError, "tree spec must be an object");
    if (!document.contains("n") || !document["n"].is_number_integer() ||
        document["n"].get<long long>() < 1) {
        throw Error(ErrorCode::SchemaError, "tree spec needs a positive integer \"n\"");
    }
    if (!document.contains("levels") || !document["levels"].is_array()) {
        throw Error(ErrorCode::SchemaError, "tree spec needs a \"levels\" array");
    }
    const auto& levels_doc = document["levels"];
    if (levels_doc.empty()) throw Error(ErrorCode::SchemaError, "\"levels\" is empty");

    MeasureMode mode = MeasureMode::normalized;
    if (document.contains("measure")) {
        if (!document["measure"].is_string()) {
            throw Error(ErrorCode::SchemaError, "\"measure\" must be a string");
        }
        try {
            mode = parse_measure_mode(document["measure"].get<std::string>());
        } catch (const Error& e) {
            throw Error(ErrorCode::SchemaError, e.what());
        }
    }

    std::vector<std::vector<TreeNode>> levels;
    for (std::size_t l = 0; l < levels_doc.size(); ++l) {
        const auto& level_doc = levels_doc[l];
        const std::string where = "levels[" + std::to_string(l) + "]";
        if (!level_doc.is_array() || level_doc.empty()) {
            throw Error(ErrorCode::SchemaError, where + " must be a non-empty array");
        }
        std::vector<TreeNode> level;
        for (std::size_t k = 0; k < level_doc.size(); ++k) {
            const auto& nd = level_doc[k];
            const std::string nw = where + "[" + std::to_string(k) + "]";
            if (!nd.is_object() || !nd.contains("elements")) {
                throw Error(ErrorCode::SchemaError, nw + " needs \"elements\"");
            }
            TreeNode node;
            node.level = l;
            node.index = k;
            if (nd.contains("k")) {
                if (!nd["k"].is_number_integer() || nd["k"].get<long long>() < 0) {
                    throw Error(ErrorCode::SchemaError, nw + ".k must be a non-negative integer");
                }
                node.index = nd["k"].get<std::size_t>();
            }
            node.elements = id_list(nd["elements"], nw + ".elements");
            if (nd.contains("children")) node.children = id_list(nd["children"], nw + ".children");
            level.push_back(std::move(node));
        }
        levels.push_back(std::move(level));
    }
    return PartitionTree(document["n"].get<std::size_t>(), std::move(levels), mode);
}

PartitionTree load_tree_spec(const json& document) {
    PartitionTree tree = parse_tree_spec(document);
    const auto report = validate_partition_tree(tree);
    if (!report.ok()) {
        std::string msg;
        for (const auto& v : report.violations) {
            msg += (msg.empty() ? "" : "; ") + v.axiom + " at l=" + std::to_string(v.level) +
                   " k=" + std::to_string(v.node) + " (" + v.detail + ")";
        }
        throw Error(ErrorCode::PartitionViolation, msg);
    }
    return tree;
}

json validation_to_json(const ValidationReport& report) {
    json violations = json::array();
    for (const auto& v : report.violations) {
        violations.push_back(
            {{"level", v.level}, {"node", v.node}, {"axiom", v.axiom}, {"detail", v.detail}});
    }
    return {{"ok", report.ok()}, {"violations", violations}};
}

PointSet read_point_csv(std::istream& in, std::string name) {
    const auto table = read_csv(in);
    if (table.header.empty() || table.header.front() != "id") {
        throw Error(ErrorCode::SchemaError, "point CSV must start with an 'id' column");
    }
    const std::size_t dim = table.header.size() - 1;
    for (std::size_t d = 0; d < dim; ++d) {
        if (table.header[d + 1] != "x" + std::to_string(d)) {
            throw Error(ErrorCode::SchemaError, "point CSV column " + std::to_string(d + 1) +
                                                    " must be named x" + std::to_string(d));
        }
    }
    std::vector<Point> points;
    points.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (row.size() != table.header.size()) {
            throw Error(ErrorCode::SchemaError, "point CSV row " + std::to_string(r + 1) +
                                                    " has " + std::to_string(row.size()) +
                                                    " fields");
        }
        Point p;
        p.id = parse_index(row[0], "id");
        for (std::size_t d = 0; d < dim; ++d) p.coords.push_back(parse_real(row[d + 1], "x"));
        points.push_back(std::move(p));
    }
    return PointSet(std::move(points), std::move(name));
}

}  // namespace treepara
