#include "mmbn/dataset.hpp"

#include <fstream>
#include <sstream>

namespace mmbn {

void check_dataset(const NetworkStructure& structure, const DiscreteDataset& data) {
    require(static_cast<int>(data.columns.size()) == structure.node_count(),
            ErrorCode::SchemaMismatch, "column count does not match structure");
    for (int j = 0; j < structure.node_count(); ++j)
        require(data.columns[j] == structure.name(j), ErrorCode::SchemaMismatch,
                "column " + data.columns[j] + " does not match node " + structure.name(j));
    for (const auto& row : data.rows) check_assignment(structure, row);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

int parse_int_cell(const std::string& cell, int line_no) {
    size_t pos = 0;
    int value = 0;
    try {
        value = std::stoi(cell, &pos);
    } catch (const std::exception&) {
        fail(ErrorCode::BadFile, "non-integer cell '" + cell + "' on line " + std::to_string(line_no));
    }
    require(pos == cell.size(), ErrorCode::BadFile,
            "trailing characters in cell '" + cell + "' on line " + std::to_string(line_no));
    require(value >= 0, ErrorCode::BadFile,
            "negative cell on line " + std::to_string(line_no));
    return value;
}

}  // namespace

DiscreteDataset load_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::BadFile, "cannot open " + path);

    DiscreteDataset data;
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), ErrorCode::BadFile, "empty dataset file " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    data.columns = split_csv_line(line);
    require(!data.columns.empty(), ErrorCode::BadFile, "no columns in " + path);

    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        require(cells.size() == data.columns.size(), ErrorCode::BadFile,
                "wrong cell count on line " + std::to_string(line_no));
        Assignment row(cells.size());
        for (size_t k = 0; k < cells.size(); ++k) row[k] = parse_int_cell(cells[k], line_no);
        data.rows.push_back(std::move(row));
    }
    return data;
}

void save_dataset_csv(const DiscreteDataset& data, const std::string& path) {
    std::ofstream out(path);
    require(out.good(), ErrorCode::BadFile, "cannot write " + path);
    for (size_t j = 0; j < data.columns.size(); ++j)
        out << (j ? "," : "") << data.columns[j];
    out << "\n";
    for (const auto& row : data.rows) {
        for (size_t j = 0; j < row.size(); ++j)
            out << (j ? "," : "") << row[j];
        out << "\n";
    }
}

DiscreteDataset take_block(const DiscreteDataset& pool, int begin, int count) {
    require(pool.count() > 0, ErrorCode::BadSize, "empty pool");
    DiscreteDataset block;
    block.columns = pool.columns;
    block.rows.reserve(count);
    for (int k = 0; k < count; ++k)
        block.rows.push_back(pool.rows[(begin + k) % pool.count()]);
    return block;
}

}  // namespace mmbn
