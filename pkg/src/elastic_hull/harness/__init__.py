"""File formats, rendering, verification campaigns and the lookup benchmark."""
