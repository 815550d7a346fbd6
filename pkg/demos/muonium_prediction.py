"""
Muonium Lamb shift from the hydrogen one
========================================

The 2s shift scales as the cube of the reduced mass, so the muonium value
follows from the measured hydrogen value and three masses.
"""

# %%
from lambkit.ratio import compare, load_reference_values, predict_muonium, ratio_factor
from lambkit.units import load_constants

constants = load_constants()
ref = load_reference_values()
print("ratio factor      ", ratio_factor(constants))

# %%
# scale the hydrogen measurement and set it against the muonium measurement
predicted = predict_muonium(ref.hydrogen, constants)
report = compare(predicted, ref)
print("hydrogen input    ", ref.hydrogen)
print("muonium predicted ", predicted)
print("muonium observed  ", ref.muonium)
print("pull (predicted)  ", round(report.pull_predicted, 4))
print("pull (competing)  ", round(report.pull_competing, 4))
