#pragma once

// Shared smart-charging corpus used across the test suites: the
// user-managed-charging feature file, its SoS-level scenario program (plain
// and extended with the energy-price rule), and the full bindings file.

#include <string>
#include <string_view>

namespace fixtures {

// Untagged variant of the charging feature: two usage scenarios, four steps
// each, long title.
inline constexpr std::string_view kUmcFeatureRaw =
    "Feature: User-managed charging (UMC): The user of an electric vehicle requests "
    "up-to-date information on energy prices and enters preferences into a smartphone "
    "app to calculate an optimized charging plan.\n"
    "  Scenario: The EVU requests information on energy prices\n"
    "    When the EVU request information on energy prices via the smartphone app\n"
    "    Then the smartphone app requests these information from an energy information service\n"
    "    And the energy information service sends this information to the smartphone app\n"
    "    And the smartphone app displays the received information\n"
    "  Scenario: The EVU user enters charging preferences\n"
    "    When the EVU user enters charging preferences\n"
    "    Then the smartphone app calculates an optimized charging plan\n"
    "    And the smartphone app sends the charging plan to the electric vehicle\n"
    "    And the electric vehicle executes this charging plan\n";

// Project version: pinned id, every scenario tagged with the EVU stakeholder.
inline constexpr std::string_view kUmcFeatureTagged =
    "@id:umc\n"
    "Feature: User-managed charging (UMC): The user of an electric vehicle requests "
    "up-to-date information on energy prices and enters preferences into a smartphone "
    "app to calculate an optimized charging plan.\n"
    "\n"
    "  @stakeholder:evu\n"
    "  Scenario: The EVU requests information on energy prices\n"
    "    When the EVU request information on energy prices via the smartphone app\n"
    "    Then the smartphone app requests these information from an energy information service\n"
    "    And the energy information service sends this information to the smartphone app\n"
    "    And the smartphone app displays the received information\n"
    "\n"
    "  @stakeholder:evu\n"
    "  Scenario: The EVU user enters charging preferences\n"
    "    When the EVU user enters charging preferences\n"
    "    Then the smartphone app calculates an optimized charging plan\n"
    "    And the smartphone app sends the charging plan to the electric vehicle\n"
    "    And the electric vehicle executes this charging plan\n";

// Plain charging interaction: one external
// stakeholder, two constituent systems, five events, one rule.
inline constexpr std::string_view kChargingScn =
    "# smart charging, SoS level\n"
    "system EVU stakeholder\n"
    "system App\n"
    "system EV\n"
    "\n"
    "event EVU.energyPriceInformation()\n"
    "event App.enterChargingPreferences()\n"
    "event App.calculateChargingPlan()\n"
    "event EV.chargingPlan()\n"
    "event EV.executeChargingPlan()\n"
    "\n"
    "scenario charging_plan on EVU -> App.enterChargingPreferences {\n"
    "    request App.calculateChargingPlan()\n"
    "    request App -> EV.chargingPlan()\n"
    "    request EV.executeChargingPlan()\n"
    "}\n";

// Extended program covering both usage scenarios: systems and events for the
// energy-price flow plus the price-information rule.
inline constexpr std::string_view kUmcScnHeader =
    "system EVU stakeholder\n"
    "system App\n"
    "system EV\n"
    "system EIS\n"
    "\n"
    "event EVU.energyPriceInformation()\n"
    "event App.enterChargingPreferences()\n"
    "event App.calculateChargingPlan()\n"
    "event EV.chargingPlan()\n"
    "event EV.executeChargingPlan()\n"
    "event App.requestEnergyPrices()\n"
    "event EIS.priceRequest()\n"
    "event App.priceInformation()\n"
    "event App.displayPrices()\n"
    "\n";

inline constexpr std::string_view kUmcRulePrices =
    "scenario request_prices on EVU -> App.requestEnergyPrices {\n"
    "    request App -> EIS.priceRequest()\n"
    "    request EIS -> App.priceInformation()\n"
    "    request App.displayPrices()\n"
    "}\n";

inline constexpr std::string_view kUmcRuleCharging =
    "scenario charging_plan on EVU -> App.enterChargingPreferences {\n"
    "    request App.calculateChargingPlan()\n"
    "    request App -> EV.chargingPlan()\n"
    "    request EV.executeChargingPlan()\n"
    "}\n";

inline const std::string kUmcScnFull =
    std::string(kUmcScnHeader) + std::string(kUmcRulePrices) + "\n" +
    std::string(kUmcRuleCharging);

// Missing the charging rule: the second usage scenario cannot pass.
inline const std::string kUmcScnBroken =
    std::string(kUmcScnHeader) + std::string(kUmcRulePrices);

// Bindings for all 8 steps; patterns are the generated anchored regexes.
inline constexpr std::string_view kUmcBind =
    "^the EVU request information on energy prices via the smartphone app$\ttrigger\t"
    "EVU -> App.requestEnergyPrices()\n"
    "^the smartphone app requests these information from an energy information service$\t"
    "receive\tApp -> EIS.priceRequest()\n"
    "^the energy information service sends this information to the smartphone app$\treceive\t"
    "EIS -> App.priceInformation()\n"
    "^the smartphone app displays the received information$\treceive\tApp.displayPrices()\n"
    "^the EVU user enters charging preferences$\ttrigger\tEVU -> App.enterChargingPreferences()\n"
    "^the smartphone app calculates an optimized charging plan$\treceive\t"
    "App.calculateChargingPlan()\n"
    "^the smartphone app sends the charging plan to the electric vehicle$\treceive\t"
    "App -> EV.chargingPlan()\n"
    "^the electric vehicle executes this charging plan$\treceive\tEV.executeChargingPlan()\n";

inline constexpr std::string_view kProjectConf =
    "[project]\n"
    "name = smart-charging\n"
    "\n"
    "[paths]\n"
    "features = features\n"
    "scenarios = scenarios\n"
    "bindings = bindings\n"
    "output = out\n"
    "\n"
    "[stakeholders]\n"
    "evu = 0.6, Electric vehicle user\n"
    "operator = 0.4, Charging infrastructure operator\n"
    "\n"
    "[estimation]\n"
    "alpha = 5\n"
    "beta = 1\n"
    "gamma = 3\n"
    "value_unit = 1\n"
    "\n"
    "[search]\n"
    "population = 100\n"
    "generations = 250\n"
    "crossover_rate = 0.9\n"
    "seed = 1\n"
    "\n"
    "[test]\n"
    "budget = 1000\n";

// Second sample feature: operator-facing monitoring with a subsystem.
inline constexpr std::string_view kMonitoringFeature =
    "@id:monitoring\n"
    "Feature: Charging infrastructure monitoring: The operator observes the state of "
    "charging stations to plan maintenance.\n"
    "  @stakeholder:operator\n"
    "  Scenario: The operator requests a status overview\n"
    "    When the operator opens the status dashboard\n"
    "    Then the dashboard requests the station states from the station gateway\n"
    "    And the station gateway reports the station states\n"
    "    And the dashboard displays the fleet status\n";

inline constexpr std::string_view kMonitoringScn =
    "system Operator stakeholder\n"
    "system Dashboard\n"
    "system Gateway\n"
    "system StationCtrl subsystem of Gateway\n"
    "\n"
    "event Dashboard.openStatusView()\n"
    "event Gateway.collectStates()\n"
    "event StationCtrl.reportState()\n"
    "event Dashboard.statesReport()\n"
    "event Dashboard.displayFleetStatus()\n"
    "\n"
    "scenario status_overview on Operator -> Dashboard.openStatusView {\n"
    "    request Dashboard -> Gateway.collectStates()\n"
    "    request StationCtrl.reportState()\n"
    "    request Gateway -> Dashboard.statesReport()\n"
    "    request Dashboard.displayFleetStatus()\n"
    "}\n";

inline constexpr std::string_view kMonitoringBind =
    "^the operator opens the status dashboard$\ttrigger\tOperator -> Dashboard.openStatusView()\n"
    "^the dashboard requests the station states from the station gateway$\treceive\t"
    "Gateway.collectStates()\n"
    "^the station gateway reports the station states$\treceive\t"
    "Gateway -> Dashboard.statesReport()\n"
    "^the dashboard displays the fleet status$\treceive\tDashboard.displayFleetStatus()\n";

} // namespace fixtures
