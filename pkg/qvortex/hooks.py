app_name = "qvortex"
app_title = "Quantum Vortex Reports"
app_publisher = "QCS"
app_description = "Photoelectron quantum vortices of a 2-D hydrogen atom ionized by an ultrashort pulse"
app_email = "info@quarkcs.com"
app_license = "mit"

# Command registry
# ------------------
# Each CLI sub-command runs one script report. Entry points are dotted
# paths to an ``execute(filters)`` function, resolved lazily.

commands = {
    "field":   "qvortex.qvortex.report.field_map.field_map.execute",
    "centers": "qvortex.qvortex.report.vortex_centers.vortex_centers.execute",
    "moments": "qvortex.qvortex.report.moment_table.moment_table.execute",
    "trace":   "qvortex.qvortex.report.vortex_trace.vortex_trace.execute",
}

# Writers
# ------------------
# After a report returns, its payload is handed to the writer registered
# for the command.

writers = {
    "field":   "qvortex.export.write_field_report",
    "centers": "qvortex.export.write_centers_report",
    "moments": "qvortex.export.write_moments_report",
    "trace":   "qvortex.export.write_trace_report",
}
