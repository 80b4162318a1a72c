#pragma once

#include "attrgraph/graph.hpp"
#include "attrgraph/json_io.hpp"
#include "attrgraph/metrics.hpp"

#include <string>

namespace attrgraph {

// JSON report documents (schema_version tagged). The caller may attach a
// "config" object before writing; field order is stable.
ojson availability_to_json(const AvailabilityReport& report);
ojson volatility_to_json(const VolatilityReport& report);
ojson within_app_to_json(const WithinAppReport& report);
ojson cross_market_to_json(const CrossMarketReport& report);
ojson org_to_json(const OrgReport& report);

ojson clusters_to_json(const AttributionGraph& graph, const ComponentsResult& components,
                       const std::vector<double>* centrality, size_t top_per_cluster);
ojson centrality_to_json(const AttributionGraph& graph, const std::vector<double>& raw,
                         const std::vector<double>& normalized, size_t top);
ojson degrees_to_json(const DegreeStats& stats, const std::vector<CcdfPoint>& curve,
                      size_t top_values);

// CSV table mirrors: signal availability matrix, volatility change rates,
// cross-market same-certificate matrix, org rows, CCDF points, and the raw
// node/edge lists of a built graph.
std::string availability_to_csv(const AvailabilityReport& report);
std::string volatility_to_csv(const VolatilityReport& report);
std::string cross_market_to_csv(const CrossMarketReport& report);
std::string org_to_csv(const OrgReport& report);
std::string ccdf_to_csv(const std::vector<CcdfPoint>& curve);
std::string graph_nodes_to_csv(const AttributionGraph& graph);
std::string graph_edges_to_csv(const AttributionGraph& graph);

} // namespace attrgraph
