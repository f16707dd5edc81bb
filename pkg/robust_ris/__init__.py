# Robust RIS Beamforming

__version__ = "1.0.0"
