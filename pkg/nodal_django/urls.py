"""
URL configuration for the nodal_django project.

The admin lists stored verification runs; everything else lives in
``foliations.urls``.
"""
from django.contrib import admin
from django.urls import path, include

urlpatterns = [
    path("admin/", admin.site.urls),
    path('', include('foliations.urls')),
]
